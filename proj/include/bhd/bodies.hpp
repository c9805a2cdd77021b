#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bhd/geom.hpp"

namespace bhd {

struct RadiusBounds {
  double r_in;   // r_in * B_2^n is inside the body
  double r_out;  // the body is inside r_out * B_2^n
};

// Polyhedral unit ball {x : sum_j |l_j(x)| <= 1}.
class AbsSumBody {
 public:
  // Throws InvalidArgument when the functionals do not span R^n (the set
  // would be unbounded) or when the list is empty.
  explicit AbsSumBody(std::vector<VecN> functionals);

  int dim() const noexcept { return dim_; }
  const std::vector<VecN>& functionals() const noexcept { return functionals_; }
  double gauge(const VecN& x) const;
  const RadiusBounds& radius_bounds() const noexcept { return bounds_; }

 private:
  int dim_;
  std::vector<VecN> functionals_;
  RadiusBounds bounds_{};
};

struct EuclideanBall {
  int n;
};

// Unit ball of (sum_k |z_k|^p)^(1/p) on C^k, with coordinates interleaved as
// (Re z1, Im z1, Re z2, Im z2, ...).
struct ComplexLpBall {
  double p;
  int k;
};

class Body;

// Cartesian product left x B_2^m; gauge max(|x1|_left, |x2|_2).
struct ProductBall {
  std::shared_ptr<const Body> left;
  int euclidean_dim;
};

// Norm given by a positively homogeneous evaluator rather than facets.
class SmoothBody {
 public:
  using Kind = std::variant<EuclideanBall, ComplexLpBall, ProductBall>;

  // Validates parameters and spot-checks positive homogeneity on seeded rays.
  explicit SmoothBody(Kind kind);

  const Kind& kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  double gauge(const VecN& x) const;
  const RadiusBounds& radius_bounds() const noexcept { return bounds_; }

 private:
  Kind kind_;
  int dim_;
  RadiusBounds bounds_{};
};

// Origin-symmetric convex body used as a unit ball.
class Body {
 public:
  Body(AbsSumBody b) : rep_(std::move(b)) {}
  Body(SmoothBody b) : rep_(std::move(b)) {}

  int dim() const noexcept;
  double minkowski(const VecN& x) const;
  std::string label() const;

  const AbsSumBody* abs_sum() const noexcept { return std::get_if<AbsSumBody>(&rep_); }
  const SmoothBody* smooth() const noexcept { return std::get_if<SmoothBody>(&rep_); }
  const ProductBall* product() const noexcept;

 private:
  std::variant<AbsSumBody, SmoothBody> rep_;
};

AbsSumBody make_cross_polytope(int n);

// The orthogonal rotation used to define the rotated cross-polytope.
MatN rotation_m();

// M(cross-polytope) in R^4, stored through the rows of M^T.
AbsSumBody make_rotated_cross_polytope();

Body make_euclidean_ball(int n);
Body make_complex_lp(double p, int k);
Body make_product(Body left, int euclidean_dim);

// Gauge of the body at x. Throws DimensionMismatch on size mismatch.
double minkowski(const Body& body, const VecN& x);

RadiusBounds body_radius_bounds(const Body& body);

}  // namespace bhd
