#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bhd/bodies.hpp"
#include "bhd/geom.hpp"

namespace bhd {

struct DensityValue {
  double value = 0.0;
  std::string body_label;
  double bivector_norm = 0.0;           // Euclidean norm of the input multivector
  std::optional<double> standard_error;  // present for Monte Carlo estimates
};

// Volume of the Euclidean unit m-ball, pi^(m/2) / Gamma(m/2 + 1); 1 <= m <= 8.
double alpha(int m);

// Busemann-Hausdorff 2-density: alpha_2 |w|_2 / H^2(B cap span w).
// Throws ZeroBivector or NotSimple.
DensityValue bh_density_2(const Body& body, const Bivector& w);

// Normed 2-dimensional Hausdorff measure of a subset of the plane with the
// given Euclidean area.
double bh_area(const Body& body, const Plane2& plane, double euclidean_area);

struct MonteCarloVolume {
  double volume;
  double standard_error;
  std::uint64_t hits;
  std::uint64_t samples;
};

// Hit-or-miss estimate of the volume of body cap span(basis), sampling the
// cube r_out [-1, 1]^d in the coordinates of the orthonormal basis. The
// estimate depends only on (seed, samples), not on the worker count.
MonteCarloVolume mc_section_volume(const Body& body, const std::vector<VecN>& basis,
                                   std::uint64_t samples, std::uint64_t seed);

// Density on simple (n-2)-vectors, n in {4, 6}: alpha_{n-2} |w|_2 divided by a
// Monte Carlo estimate of H^{n-2}(B cap span w). span w is recovered as the
// orthogonal complement of the plane of *w. Throws NotSimple, ZeroBivector,
// or InsufficientSamples if the relative standard error exceeds 1%.
DensityValue bh_density_codim2(const Body& body, const KVector& w, std::uint64_t mc_samples,
                               std::uint64_t seed);

}  // namespace bhd
