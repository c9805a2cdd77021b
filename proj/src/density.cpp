#include "bhd/density.hpp"

#include <cmath>

#include "bhd/config.hpp"
#include "bhd/error.hpp"
#include "bhd/parallel.hpp"
#include "bhd/rng.hpp"
#include "bhd/sections.hpp"

namespace bhd {

namespace {

constexpr std::size_t kMcChunk = std::size_t{1} << 15;

void require_simple_bivector(const Bivector& w) {
  if (w.degree() != 2) BHD_THROW(InvalidArgument, "expected a bivector, got degree " << w.degree());
  if (w.is_zero()) BHD_THROW(ZeroBivector, "density of the zero bivector is undefined");
  const double n2 = w.norm() * w.norm();
  if (std::abs(plucker_defect(w)) > tolerances().simplicity * n2) {
    BHD_THROW(NotSimple, "bivector is not simple (Plücker defect " << plucker_defect(w) << ")");
  }
}

}  // namespace

double alpha(int m) {
  if (m < 1 || m > 8) BHD_THROW(InvalidArgument, "alpha(m) defined for 1 <= m <= 8, got " << m);
  return std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

DensityValue bh_density_2(const Body& body, const Bivector& w) {
  if (w.dim() != body.dim()) BHD_THROW(DimensionMismatch, "bivector in R^" << w.dim() << " for body in R^" << body.dim());
  require_simple_bivector(w);
  const Plane2 plane = plane_of(w);
  DensityValue d;
  d.bivector_norm = w.norm();
  d.value = alpha(2) * d.bivector_norm / section_area(body, plane);
  d.body_label = body.label();
  return d;
}

double bh_area(const Body& body, const Plane2& plane, double euclidean_area) {
  if (!(euclidean_area >= 0.0)) BHD_THROW(InvalidArgument, "euclidean area must be nonnegative");
  return alpha(2) * euclidean_area / section_area(body, plane);
}

MonteCarloVolume mc_section_volume(const Body& body, const std::vector<VecN>& basis,
                                   std::uint64_t samples, std::uint64_t seed) {
  if (basis.empty()) BHD_THROW(InvalidArgument, "empty subspace basis");
  if (samples == 0) BHD_THROW(InsufficientSamples, "zero Monte Carlo samples");
  const int d = static_cast<int>(basis.size());
  const double r = body_radius_bounds(body).r_out;
  const std::size_t chunks = (samples + kMcChunk - 1) / kMcChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_chunks(samples, kMcChunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
    CounterRng rng(seed, c);
    std::uint64_t h = 0;
    VecN x(body.dim());
    for (std::size_t i = begin; i < end; ++i) {
      x.setZero();
      for (int j = 0; j < d; ++j) x += (r * rng.symmetric()) * basis[j];
      if (body.minkowski(x) <= 1.0) ++h;
    }
    hits[c] = h;
  });
  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;
  const double box = std::pow(2.0 * r, d);
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  MonteCarloVolume out;
  out.volume = box * p;
  out.standard_error = box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  out.hits = total;
  out.samples = samples;
  return out;
}

DensityValue bh_density_codim2(const Body& body, const KVector& w, std::uint64_t mc_samples,
                               std::uint64_t seed) {
  const int n = w.dim();
  if (n != 4 && n != 6) BHD_THROW(UnsupportedDimension, "codimension-two density supports n = 4 or 6, got " << n);
  if (n != body.dim()) BHD_THROW(DimensionMismatch, "multivector in R^" << n << " for body in R^" << body.dim());
  if (w.degree() != n - 2) BHD_THROW(InvalidArgument, "expected an " << n - 2 << "-vector, got degree " << w.degree());
  if (w.is_zero()) BHD_THROW(ZeroBivector, "density of the zero multivector is undefined");
  const Bivector dual = hodge_star(w);
  const double n2 = dual.norm() * dual.norm();
  if (std::abs(plucker_defect(dual)) > tolerances().simplicity * n2) {
    BHD_THROW(NotSimple, "(n-2)-vector is not simple");
  }
  const std::vector<VecN> basis = orthogonal_complement(plane_of(dual));
  const MonteCarloVolume vol = mc_section_volume(body, basis, mc_samples, seed);
  if (vol.hits == 0 || vol.standard_error > 0.01 * vol.volume) {
    BHD_THROW(InsufficientSamples, "relative standard error above 1% with " << mc_samples << " samples");
  }
  DensityValue d;
  d.bivector_norm = w.norm();
  d.value = alpha(n - 2) * d.bivector_norm / vol.volume;
  // First-order propagation of the volume error through 1/V.
  d.standard_error = d.value * vol.standard_error / vol.volume;
  d.body_label = body.label();
  return d;
}

}  // namespace bhd
