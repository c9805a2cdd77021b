#include "bhd/sections.hpp"

#include <cmath>

#include "bhd/config.hpp"
#include "bhd/error.hpp"

namespace bhd {

std::string SectionReport::method_name() const {
  if (method == SectionMethod::ExactHalfplane) return "exact-halfplane";
  return "radial(" + std::to_string(radial_samples) + ")";
}

std::vector<LineCoeffs> section_constraints(const AbsSumBody& body, const Plane2& plane) {
  if (plane.dim() != body.dim()) {
    BHD_THROW(DimensionMismatch, "plane in R^" << plane.dim() << " for body in R^" << body.dim());
  }
  std::vector<LineCoeffs> out;
  out.reserve(body.functionals().size());
  for (const VecN& l : body.functionals()) out.push_back({l.dot(plane.u()), l.dot(plane.v())});
  return out;
}

namespace {

// One Sutherland-Hodgman step against A x + B y <= 1.
void clip(const std::vector<Point2>& in, double A, double B, std::vector<Point2>& out) {
  out.clear();
  const std::size_t n = in.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = in[i];
    const Point2& q = in[(i + 1) % n];
    const double fp = A * p.x + B * p.y - 1.0;
    const double fq = A * q.x + B * q.y - 1.0;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Drops near-duplicate vertices, then vertices whose neighbours make a
// degenerate triangle with them.
void prune(std::vector<Point2>& v, double tol) {
  std::vector<Point2> tmp;
  for (const Point2& p : v) {
    if (!tmp.empty() && std::hypot(p.x - tmp.back().x, p.y - tmp.back().y) < tol) continue;
    tmp.push_back(p);
  }
  while (tmp.size() > 1 && std::hypot(tmp.front().x - tmp.back().x, tmp.front().y - tmp.back().y) < tol) {
    tmp.pop_back();
  }
  bool changed = true;
  while (changed && tmp.size() > 2) {
    changed = false;
    for (std::size_t i = 0; i < tmp.size(); ++i) {
      const std::size_t n = tmp.size();
      const Point2& a = tmp[(i + n - 1) % n];
      const Point2& c = tmp[(i + 1) % n];
      if (std::abs(0.5 * cross(a, tmp[i], c)) < tol) {
        tmp.erase(tmp.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  v.swap(tmp);
}

}  // namespace

Polygon2 abs_sum_polygon(std::span<const LineCoeffs> coeffs, double half_width) {
  const std::size_t k = coeffs.size();
  if (k == 0 || k > 16) BHD_THROW(InvalidArgument, "abs_sum_polygon supports 1..16 functionals, got " << k);
  const double h = half_width;
  std::vector<Point2> poly{{-h, -h}, {h, -h}, {h, h}, {-h, h}};
  std::vector<Point2> next;
  poly.reserve(8 + (std::size_t{1} << k));
  next.reserve(poly.capacity());
  for (std::uint32_t s = 0; s < (1u << k); ++s) {
    double A = 0.0, B = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double sign = (s >> j & 1u) ? -1.0 : 1.0;
      A += sign * coeffs[j].a;
      B += sign * coeffs[j].b;
    }
    if (A == 0.0 && B == 0.0) continue;
    clip(poly, A, B, next);
    poly.swap(next);
    if (poly.empty()) break;
  }
  prune(poly, tolerances().vertex_prune);
  for (const Point2& p : poly) {
    if (std::max(std::abs(p.x), std::abs(p.y)) >= h * (1.0 - 1e-9)) {
      BHD_THROW(UnboundedSection, "section reaches the clipping square of half-width " << h);
    }
  }
  return Polygon2{std::move(poly)};
}

double shoelace_area(const Polygon2& p) {
  const auto& v = p.vertices;
  if (v.size() < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * std::abs(s);
}

namespace {

// A plane of a product body lying inside the left factor's coordinates.
const Body* left_factor_plane(const Body& body, const Plane2& plane, Plane2& restricted) {
  const ProductBall* prod = body.product();
  if (!prod) return nullptr;
  const int m = prod->left->dim();
  const int e = prod->euclidean_dim;
  const double tol = tolerances().geometric;
  if (plane.u().tail(e).lpNorm<Eigen::Infinity>() > tol || plane.v().tail(e).lpNorm<Eigen::Infinity>() > tol) {
    return nullptr;
  }
  restricted = Plane2::from_orthonormal(plane.u().head(m), plane.v().head(m));
  return prod->left.get();
}

std::size_t resolve_samples(std::size_t n) { return n ? n : tolerances().radial_samples; }

}  // namespace

double radial_section_area(const Body& body, const Plane2& plane, std::size_t samples) {
  if (plane.dim() != body.dim()) BHD_THROW(DimensionMismatch, "plane in R^" << plane.dim() << " for body in R^" << body.dim());
  if (samples < 8) BHD_THROW(InvalidArgument, "radial sampling needs at least 8 angles");
  const double step = 2.0 * M_PI / static_cast<double>(samples);
  double s = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = step * static_cast<double>(i);
    const double g = body.minkowski(std::cos(t) * plane.u() + std::sin(t) * plane.v());
    if (!(g > 0.0)) BHD_THROW(UnboundedSection, "gauge vanishes on the plane");
    s += 1.0 / (g * g);
  }
  return 0.5 * s * step;
}

SectionReport cross_section(const Body& body, const Plane2& plane, std::size_t radial_samples) {
  if (plane.dim() != body.dim()) BHD_THROW(DimensionMismatch, "plane in R^" << plane.dim() << " for body in R^" << body.dim());
  if (const AbsSumBody* a = body.abs_sum()) {
    const auto coeffs = section_constraints(*a, plane);
    SectionReport r;
    r.polygon = abs_sum_polygon(coeffs, 2.0 * a->radius_bounds().r_out);
    r.euclidean_area = shoelace_area(r.polygon);
    r.method = SectionMethod::ExactHalfplane;
    return r;
  }
  Plane2 restricted = plane;
  if (const Body* left = left_factor_plane(body, plane, restricted)) {
    return cross_section(*left, restricted, radial_samples);
  }
  const std::size_t n = resolve_samples(radial_samples);
  SectionReport r;
  r.method = SectionMethod::Radial;
  r.radial_samples = n;
  r.polygon.vertices.reserve(n);
  const double step = 2.0 * M_PI / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = step * static_cast<double>(i);
    const double c = std::cos(t), si = std::sin(t);
    const double g = body.minkowski(c * plane.u() + si * plane.v());
    if (!(g > 0.0)) BHD_THROW(UnboundedSection, "gauge vanishes on the plane");
    const double radius = 1.0 / g;
    r.polygon.vertices.push_back({radius * c, radius * si});
    s += radius * radius;
  }
  r.euclidean_area = 0.5 * s * step;
  return r;
}

double section_area(const Body& body, const Plane2& plane, std::size_t radial_samples) {
  if (plane.dim() != body.dim()) BHD_THROW(DimensionMismatch, "plane in R^" << plane.dim() << " for body in R^" << body.dim());
  if (const AbsSumBody* a = body.abs_sum()) {
    const auto coeffs = section_constraints(*a, plane);
    return shoelace_area(abs_sum_polygon(coeffs, 2.0 * a->radius_bounds().r_out));
  }
  Plane2 restricted = plane;
  if (const Body* left = left_factor_plane(body, plane, restricted)) {
    return section_area(*left, restricted, radial_samples);
  }
  return radial_section_area(body, plane, resolve_samples(radial_samples));
}

}  // namespace bhd
