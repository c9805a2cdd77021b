#include <doctest.h>

#include <cmath>

#include "bhd/contraction.hpp"
#include "bhd/error.hpp"
#include "bhd/sections.hpp"
#include "oracles.hpp"

using namespace bhd;

namespace {

const Body kC(make_rotated_cross_polytope());

Plane2 w0() { return w0_plane(4); }

bool is_convex_ccw(const Polygon2& p) {
  const auto& v = p.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    const Point2& c = v[(i + 2) % v.size()];
    if ((b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x) < -1e-12) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("section constraints") {
  const auto c = section_constraints(*kC.abs_sum(), w0());
  const double r = 1 / std::sqrt(2.0);
  const double expected[4][2] = {{r, 0}, {0, r}, {0.5, -0.5}, {0.5, 0.5}};
  REQUIRE(c.size() == 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(c[j].a - expected[j][0]) < 1e-15);
    CHECK(std::abs(c[j].b - expected[j][1]) < 1e-15);
  }
  const auto o = section_constraints(make_cross_polytope(4), w0());
  CHECK(o[0].a == 1.0);
  CHECK(o[1].b == 1.0);
  CHECK(o[2].a == 0.0);
  CHECK(o[3].b == 0.0);
  CHECK_THROWS_AS(section_constraints(*kC.abs_sum(), w0_plane(5)), Error);
}

TEST_CASE("V1 constraints reproduce the scaled inequality") {
  // sqrt(1+eps^2) times the abs-sum in plane coordinates equals the direct
  // substitution of x e1 + y e2 + eps x e3 + eps y e4 into the functionals.
  const double eps = 0.07;
  const auto c = section_constraints(*kC.abs_sum(), family_plane({1, eps}));
  const double s = std::sqrt(1 + eps * eps);
  const double r = 1 / std::sqrt(2.0);
  const double sym[4][2] = {{r * (1 + eps), 0},
                            {0, r * (1 - eps)},
                            {0.5 * (1 - eps), -0.5 * (1 + eps)},
                            {0.5 * (1 - eps), 0.5 * (1 + eps)}};
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(s * c[j].a - sym[j][0]) < 1e-15);
    CHECK(std::abs(s * c[j].b - sym[j][1]) < 1e-15);
  }
}

TEST_CASE("exact section areas") {
  CHECK(std::abs(section_area(kC, w0()) - oracle::kW0Area) < 1e-12);
  CHECK(std::abs(section_area(kC, family_plane({9, 0})) - 2.0) < 1e-12);
  CHECK(std::abs(section_area(Body(make_cross_polytope(4)), w0()) - 2.0) < 1e-12);
  const SectionReport r = cross_section(kC, w0());
  CHECK(r.method_name() == "exact-halfplane");
  CHECK(r.polygon.vertices.size() == 8);
  CHECK(is_convex_ccw(r.polygon));
}

TEST_CASE("Euclidean ball sections are discs") {
  const Body b = make_euclidean_ball(4);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SectionReport r = cross_section(b, random_plane(s, 4));
    CHECK(std::abs(r.euclidean_area - M_PI) < 1e-6);
    CHECK(r.method_name() == "radial(4096)");
  }
}

TEST_CASE("shoelace") {
  CHECK(shoelace_area(Polygon2{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}) == 1.0);
  CHECK(shoelace_area(Polygon2{{{0, 0}, {1, 1}}}) == 0.0);
  const double a = 2 - std::sqrt(2.0), b = std::sqrt(2.0) - 1;
  const Polygon2 oct{{{a, 0}, {b, b}, {0, a}, {-b, b}, {-a, 0}, {-b, -b}, {0, -a}, {b, -b}}};
  CHECK(std::abs(shoelace_area(oct) - oracle::kW0Area) < 1e-14);
}

TEST_CASE("exact areas agree with vertex enumeration") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Plane2 p = random_plane(s, 4);
    CHECK(std::abs(section_area(kC, p) - oracle::abs_sum_section_area_vertices(*kC.abs_sum(), p)) < 1e-12);
  }
  const AbsSumBody rb = oracle::random_abs_sum_body(3, 4, 4);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Plane2 p = random_plane(s, 4);
    const double a = section_area(Body(rb), p);
    CHECK(std::abs(a - oracle::abs_sum_section_area_vertices(rb, p)) < 1e-12 * std::max(1.0, a));
  }
}

TEST_CASE("exact and radial agree") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Plane2 p = random_plane(1000 + s, 4);
    const double exact = section_area(kC, p);
    CHECK(std::abs(exact - radial_section_area(kC, p, 4096)) <= 5e-6 * exact);
  }
  CHECK_THROWS_AS(radial_section_area(kC, w0(), 4), Error);
}

TEST_CASE("symmetry and scaling") {
  std::vector<VecN> doubled;
  for (const VecN& l : kC.abs_sum()->functionals()) doubled.push_back(0.5 * l);
  const Body big{AbsSumBody(doubled)};
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Plane2 p = random_plane(s, 4);
    const double a = section_area(kC, p);
    CHECK(std::abs(section_area(kC, Plane2::from_orthonormal(p.v(), p.u())) - a) < 1e-12);
    CHECK(std::abs(section_area(kC, Plane2::from_orthonormal(VecN(-p.u()), p.v())) - a) < 1e-12);
    CHECK(std::abs(section_area(big, p) - 4 * a) < 1e-10 * 4 * a);
  }
}

TEST_CASE("perturbation plane sections are octagons") {
  for (int idx = 1; idx <= 8; ++idx) {
    for (double eps : {0.001, 0.01, 0.05, 0.1, 0.2}) {
      const SectionReport r = cross_section(kC, family_plane({idx, eps}));
      CHECK(r.polygon.vertices.size() == 8);
      CHECK(is_convex_ccw(r.polygon));
    }
  }
}

TEST_CASE("least section at desk scale") {
  double lo = 1e9;
  for (std::uint64_t s = 0; s < 2000; ++s) lo = std::min(lo, section_area(kC, random_plane(77, 4, s)));
  CHECK(lo >= oracle::kW0Area - 1e-9);
}

TEST_CASE("unbounded sections are reported") {
  // Nothing bounds the y direction.
  std::vector<LineCoeffs> coeffs{{1.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(abs_sum_polygon(coeffs, 4.0), Error);
}

TEST_CASE("product sections in the left factor are exact") {
  const Body prod = make_product(kC, 1);
  const SectionReport r = cross_section(prod, w0_plane(5));
  CHECK(r.method_name() == "exact-halfplane");
  CHECK(std::abs(r.euclidean_area - oracle::kW0Area) < 1e-12);
  // A plane leaving the slab goes through the radial path.
  VecN u = VecN::Zero(5), v = VecN::Zero(5);
  u[0] = 1;
  v[4] = 1;
  CHECK(cross_section(prod, Plane2::from_orthonormal(u, v)).method == SectionMethod::Radial);
}
