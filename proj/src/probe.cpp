#include "bhd/probe.hpp"

#include <cmath>

#include "bhd/config.hpp"
#include "bhd/density.hpp"
#include "bhd/error.hpp"
#include "bhd/parallel.hpp"
#include "bhd/rng.hpp"

namespace bhd {

namespace {

bool well_spanned(const VecN& a, const VecN& b) {
  const double aa = a.squaredNorm(), bb = b.squaredNorm(), ab = a.dot(b);
  return aa * bb - ab * ab > tolerances().resample * aa * bb;
}

// Distinct Monte Carlo seed per (trial, slot).
std::uint64_t mc_seed(std::uint64_t seed, std::uint64_t index, int slot) {
  CounterRng rng(seed, 3 * index + static_cast<std::uint64_t>(slot));
  rng.skip(1u << 20);
  return rng();
}

}  // namespace

SimpleTriple shared_line_triple(const VecN& u, const VecN& v, const VecN& x) {
  if (u.size() != v.size() || u.size() != x.size()) BHD_THROW(DimensionMismatch, "triple vectors differ in size");
  Bivector w1 = wedge(u, v), w2 = wedge(u, x);
  return {w1 + w2, std::move(w1), std::move(w2)};
}

SimpleTriple shared_line_decomposition(std::uint64_t seed, int n, std::uint64_t stream) {
  if (n != 4 && n != 6) BHD_THROW(UnsupportedDimension, "decompositions are generated for n = 4 or 6, got " << n);
  CounterRng rng(seed, stream);
  for (;;) {
    VecN u(n), v(n), x(n);
    for (int i = 0; i < n; ++i) u[i] = rng.gaussian();
    for (int i = 0; i < n; ++i) v[i] = rng.gaussian();
    for (int i = 0; i < n; ++i) x[i] = rng.gaussian();
    if (well_spanned(u, v) && well_spanned(u, x) && well_spanned(u, VecN(v + x))) return shared_line_triple(u, v, x);
  }
}

DecompositionTrial decomposition_trial(const Body& body, std::uint64_t index, const ScanConfig& config) {
  const int n = body.dim();
  DecompositionTrial t;
  t.index = index;
  t.triple = shared_line_decomposition(config.seed, n, index);
  t.body_label = body.label();
  if (n == 4) {
    t.phi = bh_density_2(body, t.triple.w).value;
    t.phi1 = bh_density_2(body, t.triple.w1).value;
    t.phi2 = bh_density_2(body, t.triple.w2).value;
    t.tolerance = config.exact_tolerance * std::max(1.0, t.phi1 + t.phi2);
  } else if (n == 6) {
    const DensityValue d = bh_density_codim2(body, hodge_star(t.triple.w), config.mc_samples, mc_seed(config.seed, index, 0));
    const DensityValue d1 = bh_density_codim2(body, hodge_star(t.triple.w1), config.mc_samples, mc_seed(config.seed, index, 1));
    const DensityValue d2 = bh_density_codim2(body, hodge_star(t.triple.w2), config.mc_samples, mc_seed(config.seed, index, 2));
    t.phi = d.value;
    t.phi1 = d1.value;
    t.phi2 = d2.value;
    const double se = std::sqrt(*d.standard_error * *d.standard_error + *d1.standard_error * *d1.standard_error +
                                *d2.standard_error * *d2.standard_error);
    t.standard_error = se;
    t.tolerance = config.sigma_band * se;
  } else {
    BHD_THROW(UnsupportedDimension, "semi-ellipticity probes need a body in R^4 or R^6, got R^" << n);
  }
  t.slack = t.phi1 + t.phi2 - t.phi;
  return t;
}

ScanReport semi_ellipticity_scan(const Body& body, const ScanConfig& config) {
  const int n = body.dim();
  if (n != 4 && n != 6) BHD_THROW(UnsupportedDimension, "semi-ellipticity probes need a body in R^4 or R^6, got R^" << n);
  if (config.trials == 0) BHD_THROW(InvalidArgument, "trials must be positive");
  if (!(config.sigma_band >= 0.0) || !(config.exact_tolerance >= 0.0)) BHD_THROW(InvalidArgument, "tolerances must be nonnegative");
  std::vector<DecompositionTrial> trials(config.trials);
  if (n == 4) {
    parallel_chunks(config.trials, 64, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) trials[i] = decomposition_trial(body, i, config);
    });
  } else {
    // The Monte Carlo path is already parallel inside each density.
    for (std::uint64_t i = 0; i < config.trials; ++i) trials[i] = decomposition_trial(body, i, config);
  }
  ScanReport rep;
  rep.body_label = body.label();
  rep.dim = n;
  rep.method = n == 4 ? "exact" : "monte-carlo";
  rep.trials = config.trials;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (trials[i].slack < trials[worst].slack) worst = i;
    if (trials[i].slack < -trials[i].tolerance) ++rep.violations;
  }
  rep.min_slack = trials[worst].slack;
  rep.worst_trial = trials[worst];
  return rep;
}

}  // namespace bhd
