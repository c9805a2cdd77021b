#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bhd/bodies.hpp"
#include "bhd/geom.hpp"

namespace bhd {

// w = w1 + w2 with all three simple: (u ^ (v + x), u ^ v, u ^ x).
struct SimpleTriple {
  Bivector w{4, 2};
  Bivector w1{4, 2};
  Bivector w2{4, 2};
};

SimpleTriple shared_line_triple(const VecN& u, const VecN& v, const VecN& x);

// Gaussian u, v, x from stream (seed, stream), redrawn while any of the three
// bivectors is near-degenerate. n must be 4 or 6.
SimpleTriple shared_line_decomposition(std::uint64_t seed, int n, std::uint64_t stream = 0);

struct DecompositionTrial {
  std::uint64_t index = 0;
  SimpleTriple triple;
  std::string body_label;
  double phi = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double slack = 0.0;      // phi1 + phi2 - phi
  double tolerance = 0.0;  // slack below -tolerance counts as a violation
  std::optional<double> standard_error;  // combined, Monte Carlo path only
};

struct ScanConfig {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::uint64_t mc_samples = 1000000;  // R^6 only
  double exact_tolerance = 1e-8;
  double sigma_band = 3.0;
};

struct ScanReport {
  std::string body_label;
  int dim = 0;
  std::string method;  // "exact" or "monte-carlo"
  std::uint64_t trials = 0;
  double min_slack = 0.0;
  DecompositionTrial worst_trial;
  std::uint64_t violations = 0;
};

// Evaluates one seeded trial. In R^4 the bivectors are fed to the 2-density;
// in R^6 their Hodge duals are fed to the codimension-two density.
DecompositionTrial decomposition_trial(const Body& body, std::uint64_t index, const ScanConfig& config);

// Triangle-inequality scan over shared-line triples. Violations are counted,
// not thrown.
ScanReport semi_ellipticity_scan(const Body& body, const ScanConfig& config);

}  // namespace bhd
