#include "bhd/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "bhd/error.hpp"
#include "bhd/sections.hpp"

namespace bhd {

MatN ProjectionW0::matrix(int n) const {
  if (n < 4 || n > kMaxDim) BHD_THROW(UnsupportedDimension, "projection needs 4 <= n <= " << kMaxDim);
  MatN m = MatN::Zero(n, n);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(0, 2) = a;
  m(0, 3) = b;
  m(1, 2) = c;
  m(1, 3) = d;
  return m;
}

std::array<double, 2> ProjectionW0::apply(const VecN& x) const {
  return {x[0] + a * x[2] + b * x[3], x[1] + c * x[2] + d * x[3]};
}

Plane2 w0_plane(int n) {
  if (n < 2) BHD_THROW(InvalidArgument, "W0 needs n >= 2");
  return Plane2::from_orthonormal(basis_vector(n, 0), basis_vector(n, 1));
}

namespace {

struct PerturbationPattern {
  int u_axis;
  double u_sign;
  int v_axis;
  double v_sign;
};

// e1 + u_sign eps e_{u_axis}, e2 + v_sign eps e_{v_axis} (0-based axes).
constexpr std::array<PerturbationPattern, 8> kPatterns{{
    {2, +1.0, 3, +1.0},
    {2, -1.0, 3, -1.0},
    {2, -1.0, 3, +1.0},
    {2, +1.0, 3, -1.0},
    {3, +1.0, 2, +1.0},
    {3, -1.0, 2, -1.0},
    {3, -1.0, 2, +1.0},
    {3, +1.0, 2, -1.0},
}};

}  // namespace

Plane2 family_plane(const PlaneFamilyId& id) {
  if (id.index == 9) {
    const double r = 1.0 / std::sqrt(2.0);
    VecN u(4), v(4);
    u << r, 0.0, r, 0.0;
    v << 0.0, r, 0.0, -r;
    return Plane2::from_orthonormal(u, v);
  }
  if (id.index < 1 || id.index > 9) BHD_THROW(InvalidId, "plane index " << id.index << " outside 1..9");
  if (!(std::abs(id.epsilon) <= 0.5)) BHD_THROW(InvalidId, "epsilon " << id.epsilon << " outside [-0.5, 0.5]");
  const PerturbationPattern& pat = kPatterns[static_cast<std::size_t>(id.index - 1)];
  const double s = std::sqrt(1.0 + id.epsilon * id.epsilon);
  VecN u = VecN::Zero(4), v = VecN::Zero(4);
  u[0] = 1.0 / s;
  u[pat.u_axis] = pat.u_sign * id.epsilon / s;
  v[1] = 1.0 / s;
  v[pat.v_axis] = pat.v_sign * id.epsilon / s;
  return Plane2::from_orthonormal(u, v);
}

std::string plane_label(const PlaneFamilyId& id) {
  if (id.index == 9) return "v9";
  char buf[48];
  std::snprintf(buf, sizeof buf, "v%d:%.17g", id.index, id.epsilon);
  return buf;
}

double area_factor(const ProjectionW0& p, const Plane2& plane) {
  if (plane.dim() < 4) BHD_THROW(DimensionMismatch, "area_factor needs a plane in R^n, n >= 4");
  const auto pu = p.apply(plane.u());
  const auto pv = p.apply(plane.v());
  return std::abs(pu[0] * pv[1] - pu[1] * pv[0]);
}

double contraction_gap(const Body& body, const ProjectionW0& p, const Plane2& plane) {
  if (body.dim() < 4) BHD_THROW(UnsupportedDimension, "contraction gap needs a body in R^n, n >= 4");
  return area_factor(p, plane) * section_area(body, plane) - section_area(body, w0_plane(body.dim()));
}

double lemma_lower_bound(LemmaFamily family, double eps) {
  if (!(std::abs(eps) < 0.5)) BHD_THROW(InvalidArgument, "lemma bounds need |eps| < 0.5");
  const double r2 = std::sqrt(2.0);
  const double e2 = eps * eps;
  if (family == LemmaFamily::V1V2) {
    const double lead = 4.0 * (1.0 + e2) / (1.0 + r2 + (r2 - 1.0) * e2);
    return lead * ((1.0 - eps) / (2.0 + r2 - (2.0 - r2) * eps) + (1.0 + eps) / (2.0 + r2 + (2.0 - r2) * eps));
  }
  return 8.0 * (1.0 + e2) / ((r2 + 1.0 + (r2 - 1.0) * eps) * (r2 + 2.0 + (r2 - 2.0) * eps));
}

QuadrilateralPoints lemma1_extreme_points(double eps) {
  const double r2 = std::sqrt(2.0);
  const double s = std::sqrt(1.0 + eps * eps);
  const double den = 1.0 + r2 + (r2 - 1.0) * eps * eps;
  return {2.0 * s / (2.0 + r2 - (2.0 - r2) * eps), 2.0 * s / (2.0 + r2 + (2.0 - r2) * eps),
          (1.0 + eps) * s / den, (1.0 - eps) * s / den};
}

TaylorFit taylor_fit(const std::function<double(double)>& area_fn, std::span<const double> eps_grid) {
  std::set<double> distinct(eps_grid.begin(), eps_grid.end());
  if (distinct.size() < 4) BHD_THROW(InvalidArgument, "taylor_fit needs at least 4 distinct epsilons");
  for (double e : distinct)
    if (!(e > 0.0 && e <= 0.05)) BHD_THROW(InvalidArgument, "taylor_fit epsilon " << e << " outside (0, 0.05]");
  if (*distinct.rbegin() < 10.0 * *distinct.begin()) {
    BHD_THROW(IllConditioned, "taylor_fit grid spans less than one decade");
  }
  const auto m = static_cast<Eigen::Index>(distinct.size());
  Eigen::MatrixXd design(m, 3);
  Eigen::VectorXd rhs(m);
  Eigen::Index row = 0;
  for (double e : distinct) {
    const double f = area_fn(e);
    const double g = area_fn(-e);
    if (std::abs(f - g) >= 1e-10) BHD_THROW(InvalidArgument, "area function is not even at eps = " << e);
    design(row, 0) = 1.0;
    design(row, 1) = e * e;
    design(row, 2) = e * e * e * e;
    rhs(row) = f;
    ++row;
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(rhs);
  const double residual = (design * coef - rhs).lpNorm<Eigen::Infinity>();
  return {coef(0), coef(1), coef(2), residual};
}

std::array<PinningInterval, 4> proposition_pinning(const Body& body, double eps) {
  if (!(eps > 0.0 && eps <= 0.1)) BHD_THROW(InvalidArgument, "pinning needs 0 < eps <= 0.1");
  if (body.dim() < 4) BHD_THROW(UnsupportedDimension, "pinning needs a body in R^n, n >= 4");
  const int n = body.dim();
  const double w0 = section_area(body, w0_plane(n));
  std::array<PinningInterval, 4> out{{{"a+d", -INFINITY, INFINITY},
                                      {"a-d", -INFINITY, INFINITY},
                                      {"b+c", -INFINITY, INFINITY},
                                      {"b-c", -INFINITY, INFINITY}}};
  // Unit change of each combination, in (a, b, c, d).
  constexpr double directions[4][4] = {
      {0.5, 0.0, 0.0, 0.5}, {0.5, 0.0, 0.0, -0.5}, {0.0, 0.5, 0.5, 0.0}, {0.0, 0.5, -0.5, 0.0}};
  for (int idx = 1; idx <= 8; ++idx) {
    const Plane2 plane = family_plane({idx, eps}).embedded(n);
    const VecN& u = plane.u();
    const VecN& v = plane.v();
    // det of the projected basis at p = 0 and its gradient in (a, b, c, d).
    const double det0 = u[0] * v[1] - u[1] * v[0];
    const double grad[4] = {u[2] * v[1] - u[1] * v[2], u[3] * v[1] - u[1] * v[3],
                            u[0] * v[2] - u[2] * v[0], u[0] * v[3] - u[3] * v[0]};
    int best = 0;
    double kappa = 0.0;
    for (int c = 0; c < 4; ++c) {
      double k = 0.0;
      for (int j = 0; j < 4; ++j) k += grad[j] * directions[c][j];
      if (std::abs(k) > std::abs(kappa)) {
        kappa = k;
        best = c;
      }
    }
    // det0 + kappa * s <= w0 / area(V) for a non-expanding projection.
    const double bound = (w0 / section_area(body, plane) - det0) / kappa;
    if (kappa > 0.0) {
      out[best].upper = std::min(out[best].upper, bound);
    } else {
      out[best].lower = std::max(out[best].lower, bound);
    }
  }
  return out;
}

AscentResult local_ascent(const Body& body, const ProjectionW0& p, const Plane2& start,
                          int max_iterations, double w0_area) {
  const int n = body.dim();
  auto evaluate = [&](const Plane2& pl) { return area_factor(p, pl) * section_area(body, pl) - w0_area; };
  std::array<double, 8> x{};
  for (int i = 0; i < 4; ++i) {
    x[i] = start.u()[i];
    x[4 + i] = start.v()[i];
  }
  Plane2 best_plane = start;
  double best = evaluate(start);
  double step = 0.1;
  int it = 0;
  for (; it < max_iterations && step > 1e-10; ++it) {
    bool improved = false;
    for (int j = 0; j < 8; ++j) {
      for (double sign : {1.0, -1.0}) {
        std::array<double, 8> y = x;
        y[j] += sign * step;
        VecN a = VecN::Zero(n), b = VecN::Zero(n);
        for (int i = 0; i < 4; ++i) {
          a[i] = y[i];
          b[i] = y[4 + i];
        }
        const double aa = a.squaredNorm(), bb = b.squaredNorm(), ab = a.dot(b);
        if (!(aa * bb - ab * ab > 1e-9 * aa * bb)) continue;
        const Plane2 cand = gram_schmidt(a, b);
        const double g = evaluate(cand);
        if (g > best) {
          best = g;
          best_plane = cand;
          for (int i = 0; i < 4; ++i) {
            x[i] = cand.u()[i];
            x[4 + i] = cand.v()[i];
          }
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {best_plane, best, it};
}

}  // namespace bhd
