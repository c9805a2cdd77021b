#include <doctest.h>

#include <cmath>

#include "bhd/bodies.hpp"
#include "bhd/error.hpp"
#include "bhd/rng.hpp"
#include "oracles.hpp"

using namespace bhd;

namespace {

VecN v4(double a, double b, double c, double d) {
  VecN v(4);
  v << a, b, c, d;
  return v;
}

}  // namespace

TEST_CASE("cross-polytope gauge") {
  const Body o(make_cross_polytope(4));
  CHECK(o.minkowski(v4(1, 0, 0, 0)) == 1.0);
  CHECK(o.minkowski(v4(0.25, 0.25, 0.25, 0.25)) == 1.0);
  CHECK(o.minkowski(v4(0, 0, 0, 0)) == 0.0);
  CHECK_THROWS_AS(o.minkowski(VecN::Zero(3)), Error);
}

TEST_CASE("rotation matrix is orthogonal and defines the rotated body") {
  const MatN m = rotation_m();
  CHECK((m.transpose() * m - MatN::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  const AbsSumBody c = make_rotated_cross_polytope();
  // Functionals are the rows of M^T.
  for (int j = 0; j < 4; ++j) CHECK((c.functionals()[static_cast<std::size_t>(j)] - VecN(m.col(j))).norm() < 1e-15);

  const Body cb(c);
  CHECK(std::abs(cb.minkowski(VecN(m.col(0))) - 1.0) < 1e-15);
  CHECK(std::abs(cb.minkowski(v4(1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0), 0)) - 1.0) < 1e-15);
  CHECK(std::abs(cb.minkowski(v4(2 - std::sqrt(2.0), 0, 0, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(cb.minkowski(VecN(m * v4(0.25, 0.25, 0.25, 0.25))) - 1.0) < 1e-15);

  const Body o(make_cross_polytope(4));
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const VecN x = oracle::gaussian_vec(3, t, 4);
    const double l1 = o.minkowski(x);
    CHECK(std::abs(cb.minkowski(VecN(m * x)) - l1) <= 1e-12 * l1);
  }
}

TEST_CASE("radius bounds") {
  const auto e = body_radius_bounds(make_euclidean_ball(4));
  CHECK(e.r_in == 1.0);
  CHECK(e.r_out == 1.0);
  for (const AbsSumBody& b : {make_cross_polytope(4), make_rotated_cross_polytope()}) {
    const auto r = b.radius_bounds();
    CHECK(r.r_in <= 0.5 + 1e-15);
    CHECK(r.r_out >= 1.0);
    // Every boundary point lies between the two radii.
    for (std::uint64_t t = 0; t < 500; ++t) {
      const VecN x = oracle::gaussian_vec(8, t, 4);
      const double radius = x.norm() / b.gauge(x);
      CHECK(radius >= r.r_in - 1e-12);
      CHECK(radius <= r.r_out);
    }
  }
}

TEST_CASE("abs-sum construction errors") {
  CHECK_THROWS_AS(AbsSumBody({}), Error);
  CHECK_THROWS_AS(AbsSumBody({v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(1, 1, 0, 0)}), Error);
}

TEST_CASE("product and complex gauges") {
  const Body prod = make_product(Body(make_rotated_cross_polytope()), 1);
  CHECK(prod.dim() == 5);
  VecN x = VecN::Zero(5);
  x[4] = 1.0;
  CHECK(prod.minkowski(x) == 1.0);
  const Body c(make_rotated_cross_polytope());
  for (std::uint64_t t = 0; t < 200; ++t) {
    const VecN y = oracle::gaussian_vec(4, t, 4);
    VecN z = VecN::Zero(5);
    z.head(4) = y;
    CHECK(prod.minkowski(z) == c.minkowski(y));
  }

  const Body l2 = make_complex_lp(2.0, 2);
  CHECK(std::abs(l2.minkowski(v4(1, 0, 0, 0)) - 1.0) < 1e-15);
  for (double p : {1.0, 1.5, 3.0, 4.0}) {
    const Body b = make_complex_lp(p, 3);
    CounterRng rng(12, static_cast<std::uint64_t>(p * 10));
    for (int t = 0; t < 200; ++t) {
      VecN z(6);
      for (int i = 0; i < 6; ++i) z[i] = rng.gaussian();
      const double lr = rng.gaussian(), li = rng.gaussian();
      VecN lz(6);
      for (int k = 0; k < 3; ++k) {
        lz[2 * k] = lr * z[2 * k] - li * z[2 * k + 1];
        lz[2 * k + 1] = lr * z[2 * k + 1] + li * z[2 * k];
      }
      const double g = b.minkowski(z);
      CHECK(std::abs(b.minkowski(lz) - std::hypot(lr, li) * g) <= 1e-12 * std::max(1.0, std::hypot(lr, li) * g));
    }
  }
  CHECK_THROWS_AS(make_complex_lp(0.5, 2), Error);
  CHECK_THROWS_AS(make_euclidean_ball(9), Error);
}

TEST_CASE("triangle inequality and symmetry for every variant") {
  const std::vector<Body> bodies{Body(make_cross_polytope(4)),       Body(make_rotated_cross_polytope()),
                                 make_euclidean_ball(4),             make_complex_lp(1.5, 2),
                                 make_complex_lp(3.0, 3),            make_product(Body(make_rotated_cross_polytope()), 2),
                                 Body(oracle::random_abs_sum_body(5, 4, 3))};
  for (const Body& b : bodies) {
    for (std::uint64_t t = 0; t < 1000; ++t) {
      const VecN x = oracle::gaussian_vec(21, 2 * t, b.dim());
      const VecN y = oracle::gaussian_vec(21, 2 * t + 1, b.dim());
      CHECK(b.minkowski(VecN(x + y)) <= b.minkowski(x) + b.minkowski(y) + 1e-10);
      CHECK(b.minkowski(VecN(-x)) == doctest::Approx(b.minkowski(x)).epsilon(1e-15));
    }
  }
}

TEST_CASE("radius bounds contain smooth bodies") {
  for (const Body& b : {make_complex_lp(1.5, 3), make_complex_lp(4.0, 3),
                        make_product(Body(make_rotated_cross_polytope()), 1)}) {
    const auto r = body_radius_bounds(b);
    for (std::uint64_t t = 0; t < 500; ++t) {
      const VecN x = oracle::gaussian_vec(31, t, b.dim());
      const double radius = x.norm() / b.minkowski(x);
      CHECK(radius >= r.r_in * (1 - 1e-12));
      CHECK(radius <= r.r_out * (1 + 1e-12));
    }
  }
}

TEST_CASE("labels") {
  CHECK(Body(make_rotated_cross_polytope()).label() == "abs_sum(n=4,k=4)");
  CHECK(make_euclidean_ball(4).label() == "euclidean(n=4)");
}
