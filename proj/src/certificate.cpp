#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "bhd/contraction.hpp"
#include "bhd/error.hpp"
#include "bhd/parallel.hpp"
#include "bhd/sections.hpp"

namespace bhd {

namespace {

constexpr std::size_t kGridChunk = 4096;

// First four coordinates of a family plane plus its section area.
struct PackedPlane {
  double u[4];
  double v[4];
  double area;
};

struct FamilyEval {
  double gap;
  int witness;
};

FamilyEval family_gap(const std::vector<PackedPlane>& planes, const std::array<double, 4>& p, double w0) {
  const double a = p[0], b = p[1], c = p[2], d = p[3];
  FamilyEval best{-INFINITY, -1};
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const PackedPlane& q = planes[i];
    const double x0 = q.u[0] + a * q.u[2] + b * q.u[3];
    const double y0 = q.u[1] + c * q.u[2] + d * q.u[3];
    const double x1 = q.v[0] + a * q.v[2] + b * q.v[3];
    const double y1 = q.v[1] + c * q.v[2] + d * q.v[3];
    const double g = std::abs(x0 * y1 - y0 * x1) * q.area - w0;
    if (g > best.gap) best = {g, static_cast<int>(i)};
  }
  return best;
}

// Points live on the doubled lattice: coordinate j in [0, 2(grid_n - 1)]
// maps to -R + R j / (grid_n - 1).
struct Lattice {
  int grid_n;
  double R;
  int fine() const { return 2 * (grid_n - 1) + 1; }
  std::uint64_t key(const std::array<int, 4>& j) const {
    std::uint64_t k = 0;
    for (int x : j) k = k * static_cast<std::uint64_t>(fine()) + static_cast<std::uint64_t>(x);
    return k;
  }
  std::array<int, 4> index(std::uint64_t k) const {
    std::array<int, 4> j{};
    for (int i = 3; i >= 0; --i) {
      j[i] = static_cast<int>(k % static_cast<std::uint64_t>(fine()));
      k /= static_cast<std::uint64_t>(fine());
    }
    return j;
  }
  std::array<double, 4> params(std::uint64_t k) const {
    const auto j = index(k);
    std::array<double, 4> p{};
    for (int i = 0; i < 4; ++i) p[i] = -R + R * j[i] / static_cast<double>(grid_n - 1);
    return p;
  }
  // Key of the coarse grid cell with flat index c.
  std::uint64_t coarse_key(std::size_t c) const {
    std::array<int, 4> j{};
    for (int i = 3; i >= 0; --i) {
      j[i] = 2 * static_cast<int>(c % static_cast<std::size_t>(grid_n));
      c /= static_cast<std::size_t>(grid_n);
    }
    return key(j);
  }
};

void validate(const Body& body, const CertificateConfig& c) {
  if (body.dim() < 4) BHD_THROW(UnsupportedDimension, "certificate needs a body in R^n, n >= 4");
  if (!(c.box_halfwidth >= 2.0)) BHD_THROW(InvalidArgument, "box half-width must be >= 2, got " << c.box_halfwidth);
  if (c.grid_n < 21 || c.grid_n > 129) BHD_THROW(InvalidArgument, "grid_n must be in [21, 129], got " << c.grid_n);
  if (c.eps_set.empty()) BHD_THROW(InvalidArgument, "eps set is empty");
  for (double e : c.eps_set)
    if (!(e > 0.0 && e <= 0.2)) BHD_THROW(InvalidArgument, "eps " << e << " outside (0, 0.2]");
  if (c.extra_planes < 0) BHD_THROW(InvalidArgument, "extra_planes must be >= 0");
  if (!(c.gap_threshold > 0.0)) BHD_THROW(InvalidArgument, "gap threshold must be positive");
  if (!(c.refine_fraction > 0.0 && c.refine_fraction <= 1.0)) BHD_THROW(InvalidArgument, "refine fraction must be in (0, 1]");
  if (c.ascent_iterations < 0 || c.ascent_iterations > 200) BHD_THROW(InvalidArgument, "ascent iterations must be in [0, 200]");
  if (c.ascent_starts < 1) BHD_THROW(InvalidArgument, "ascent starts must be >= 1");
  if (c.exterior_radii < 2) BHD_THROW(InvalidArgument, "exterior radii must be >= 2");
  if (!(c.exterior_factor > 1.0)) BHD_THROW(InvalidArgument, "exterior factor must be > 1");
}

ExteriorReport exterior_check(const std::vector<PackedPlane>& planes, double w0, const CertificateConfig& c) {
  ExteriorReport rep;
  for (int i = 0; i < c.exterior_radii; ++i) {
    rep.radii.push_back(c.box_halfwidth * std::pow(c.exterior_factor, i / static_cast<double>(c.exterior_radii - 1)));
  }
  rep.min_gap_at_box = INFINITY;
  for (int signs = 0; signs < 16; ++signs) {
    for (int weights = 0; weights < 16; ++weights) {
      std::array<double, 4> dir{};
      for (int i = 0; i < 4; ++i) {
        dir[i] = ((signs >> i) & 1 ? -1.0 : 1.0) * ((weights >> i) & 1 ? 0.5 : 1.0);
      }
      double top = 0.0;
      for (double x : dir) top = std::max(top, std::abs(x));
      for (double& x : dir) x /= top;
      ++rep.rays;
      double prev = -INFINITY;
      bool monotone = true;
      for (std::size_t r = 0; r < rep.radii.size(); ++r) {
        std::array<double, 4> p{};
        for (int i = 0; i < 4; ++i) p[i] = rep.radii[r] * dir[i];
        const double g = family_gap(planes, p, w0).gap;
        if (r == 0) rep.min_gap_at_box = std::min(rep.min_gap_at_box, g);
        if (g < prev - 1e-12 * std::max(1.0, std::abs(prev))) monotone = false;
        prev = g;
      }
      if (!monotone) ++rep.non_monotone_rays;
    }
  }
  rep.ok = rep.non_monotone_rays == 0 && rep.min_gap_at_box > c.gap_threshold;
  return rep;
}

struct Candidate {
  std::uint64_t key;
  FamilyEval eval;
};

bool candidate_less(const Candidate& x, const Candidate& y) {
  if (x.eval.gap != y.eval.gap) return x.eval.gap < y.eval.gap;
  return x.key < y.key;
}

}  // namespace

Certificate certify_no_contraction(const Body& body, const CertificateConfig& config) {
  validate(body, config);
  const auto t0 = std::chrono::steady_clock::now();
  const int n = body.dim();

  Certificate cert;
  cert.config = config;
  cert.body_label = body.label();
  cert.w0_area = section_area(body, w0_plane(n));
  const double w0 = cert.w0_area;

  for (double e : config.eps_set) {
    for (int idx = 1; idx <= 8; ++idx) {
      const PlaneFamilyId id{idx, e};
      const Plane2 pl = family_plane(id).embedded(n);
      cert.planes.push_back({plane_label(id), pl, section_area(body, pl)});
    }
  }
  {
    const Plane2 pl = family_plane({9, 0.0}).embedded(n);
    cert.planes.push_back({"v9", pl, section_area(body, pl)});
  }
  for (int i = 0; i < config.extra_planes; ++i) {
    const Plane2 pl = random_plane(config.seed, 4, static_cast<std::uint64_t>(i)).embedded(n);
    cert.planes.push_back({"random:" + std::to_string(config.seed) + "/" + std::to_string(i), pl,
                           section_area(body, pl)});
  }
  std::vector<PackedPlane> packed;
  for (const FamilyPlane& f : cert.planes) {
    PackedPlane q{};
    for (int i = 0; i < 4; ++i) {
      q.u[i] = f.plane.u()[i];
      q.v[i] = f.plane.v()[i];
    }
    q.area = f.section_area;
    packed.push_back(q);
  }

  const Lattice lat{config.grid_n, config.box_halfwidth};
  std::size_t cells = 1;
  for (int i = 0; i < 4; ++i) cells *= static_cast<std::size_t>(config.grid_n);
  cert.grid_cells = cells;

  std::vector<Candidate> cand(cells);
  parallel_chunks(cells, kGridChunk, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const std::uint64_t k = lat.coarse_key(c);
      cand[c] = {k, family_gap(packed, lat.params(k), w0)};
    }
  });

  // Refinement: half-step neighbours of the worst cells.
  const auto worst = static_cast<std::size_t>(std::ceil(config.refine_fraction * static_cast<double>(cells)));
  std::vector<std::size_t> order(cells);
  for (std::size_t i = 0; i < cells; ++i) order[i] = i;
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(worst - 1), order.end(),
                   [&](std::size_t x, std::size_t y) { return candidate_less(cand[x], cand[y]); });
  std::vector<std::uint64_t> fine;
  for (std::size_t w = 0; w < worst; ++w) {
    const auto j = lat.index(cand[order[w]].key);
    for (int off = 0; off < 81; ++off) {
      std::array<int, 4> q = j;
      int o = off;
      bool all_even = true;
      bool inside = true;
      for (int i = 0; i < 4; ++i) {
        q[i] += o % 3 - 1;
        o /= 3;
        if (q[i] < 0 || q[i] >= lat.fine()) inside = false;
        if (q[i] % 2 != 0) all_even = false;
      }
      if (inside && !all_even) fine.push_back(lat.key(q));
    }
  }
  std::sort(fine.begin(), fine.end());
  fine.erase(std::unique(fine.begin(), fine.end()), fine.end());
  cert.refined_points = fine.size();
  const std::size_t base = cand.size();
  cand.resize(base + fine.size());
  parallel_chunks(fine.size(), kGridChunk, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) cand[base + i] = {fine[i], family_gap(packed, lat.params(fine[i]), w0)};
  });

  cert.witness_histogram.assign(cert.planes.size(), 0);
  for (std::size_t c = 0; c < cells; ++c) ++cert.witness_histogram[static_cast<std::size_t>(cand[c].eval.witness)];

  std::sort(cand.begin(), cand.end(), candidate_less);

  // Ascend points in order of family gap until the smallest ascended value is
  // no larger than every family gap still pending.
  auto ascend = [&](const Candidate& cd) {
    EvaluatedPoint ep;
    ep.params = lat.params(cd.key);
    ep.family_gap = cd.eval.gap;
    ep.family_witness = cd.eval.witness;
    ep.gap = cd.eval.gap;
    ep.witness = cd.eval.witness;
    ep.ascended = true;
    const ProjectionW0 p{ep.params[0], ep.params[1], ep.params[2], ep.params[3]};
    std::vector<std::pair<double, int>> starts;
    for (std::size_t i = 0; i < packed.size(); ++i) {
      starts.emplace_back(area_factor(p, cert.planes[i].plane) * packed[i].area - w0, static_cast<int>(i));
    }
    std::stable_sort(starts.begin(), starts.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    const int count = std::min<int>(config.ascent_starts, static_cast<int>(starts.size()));
    double best = -INFINITY;
    for (int s = 0; s < count; ++s) {
      const int idx = starts[static_cast<std::size_t>(s)].second;
      AscentResult r = local_ascent(body, p, cert.planes[static_cast<std::size_t>(idx)].plane, config.ascent_iterations, w0);
      if (r.gap > best) {
        best = r.gap;
        ep.witness = idx;
        ep.ascended_plane = r.plane;
      }
    }
    ep.gap = std::max(best, cd.eval.gap);
    return ep;
  };
  auto heap_greater = [](const EvaluatedPoint& x, const EvaluatedPoint& y) {
    if (x.gap != y.gap) return x.gap > y.gap;
    return x.params > y.params;
  };
  std::priority_queue<EvaluatedPoint, std::vector<EvaluatedPoint>, decltype(heap_greater)> heap(heap_greater);
  std::size_t next = 0;
  while (next < cand.size() && (heap.empty() || heap.top().gap > cand[next].eval.gap)) {
    EvaluatedPoint ep = ascend(cand[next]);
    cert.ascended.push_back(ep);
    heap.push(std::move(ep));
    ++next;
  }
  cert.global_min = heap.top();
  std::sort(cert.ascended.begin(), cert.ascended.end(), [&](const auto& x, const auto& y) { return heap_greater(y, x); });

  std::size_t positive = 0;
  {
    std::vector<std::pair<std::uint64_t, double>> lifted;
    for (const auto& ep : cert.ascended) {
      std::array<int, 4> j{};
      bool coarse = true;
      for (int i = 0; i < 4; ++i) {
        const double t = (ep.params[i] + lat.R) * (lat.grid_n - 1) / lat.R;
        j[i] = static_cast<int>(std::lround(t));
        if (j[i] % 2 != 0) coarse = false;
      }
      if (coarse) lifted.emplace_back(lat.key(j), ep.gap);
    }
    std::sort(lifted.begin(), lifted.end());
    for (const Candidate& cd : cand) {
      const auto j = lat.index(cd.key);
      if (j[0] % 2 || j[1] % 2 || j[2] % 2 || j[3] % 2) continue;
      double g = cd.eval.gap;
      auto it = std::lower_bound(lifted.begin(), lifted.end(), std::make_pair(cd.key, -HUGE_VAL));
      if (it != lifted.end() && it->first == cd.key) g = std::max(g, it->second);
      if (g > 0.0) ++positive;
    }
  }
  cert.positive_cells = positive;

  cert.exterior = exterior_check(packed, w0, config);
  cert.success = cert.global_min.gap > config.gap_threshold && cert.exterior.ok;
  cert.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cert;
}

void require_success(const Certificate& cert) {
  if (cert.success) return;
  const auto& p = cert.global_min.params;
  if (cert.global_min.gap <= cert.config.gap_threshold) {
    BHD_THROW(CertificateFailed, "max gap " << cert.global_min.gap << " <= threshold " << cert.config.gap_threshold
                                            << " at (a,b,c,d) = (" << p[0] << ", " << p[1] << ", " << p[2] << ", "
                                            << p[3] << ")");
  }
  BHD_THROW(CertificateFailed, "exterior check failed: " << cert.exterior.non_monotone_rays
                                                         << " non-monotone rays, min gap on the box boundary "
                                                         << cert.exterior.min_gap_at_box);
}

}  // namespace bhd
