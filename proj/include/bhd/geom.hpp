#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bhd {

inline constexpr int kMaxDim = 8;

using VecN = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using MatN = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

VecN basis_vector(int n, int i);
VecN make_vec(std::span<const double> values);

// Oriented 2-plane through the origin, held as an ordered orthonormal pair.
class Plane2 {
 public:
  // Throws InvalidArgument unless (u, v) is orthonormal within tolerance.
  static Plane2 from_orthonormal(const VecN& u, const VecN& v);

  const VecN& u() const noexcept { return u_; }
  const VecN& v() const noexcept { return v_; }
  int dim() const noexcept { return static_cast<int>(u_.size()); }

  // Point x*u + y*v.
  VecN at(double x, double y) const { return x * u_ + y * v_; }

  // Same plane embedded in R^m (m >= dim) by zero padding.
  Plane2 embedded(int m) const;

 private:
  Plane2(VecN u, VecN v) : u_(std::move(u)), v_(std::move(v)) {}
  VecN u_, v_;
};

// Orthonormalizes (a, b); u is a/|a|. Throws DegenerateSpan when the Gram
// determinant of (a, b) is at or below tolerance.
Plane2 gram_schmidt(const VecN& a, const VecN& b);

// Principal-angle (geodesic) distance between two planes of the same ambient
// dimension: sqrt(theta_1^2 + theta_2^2).
double grassmann_distance(const Plane2& p, const Plane2& q);

// Element of the k-th exterior power of R^n in lexicographic coordinates over
// the k-subsets of {0..n-1}. For n = 4, k = 2 the order is 12,13,14,23,24,34.
class KVector {
 public:
  KVector(int n, int degree);
  KVector(int n, int degree, std::vector<double> coords);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return k_; }
  std::size_t size() const noexcept { return coords_.size(); }

  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  // Coefficient of e_{i1} ^ ... ^ e_{ik} for an increasing index list.
  double at(std::span<const int> indices) const;

  double norm() const;
  bool is_zero() const;

  KVector operator+(const KVector& o) const;
  KVector operator-(const KVector& o) const;
  KVector operator*(double s) const;

 private:
  int n_, k_;
  std::vector<double> coords_;
};

using Bivector = KVector;

KVector operator*(double s, const KVector& w);

// Bitmask of the i-th k-subset of {0..n-1} in lexicographic order.
std::uint32_t subset_mask(int n, int k, std::size_t index);
std::size_t subset_index(int n, int k, std::uint32_t mask);
std::size_t subset_count(int n, int k);

Bivector wedge(const VecN& u, const VecN& v);
KVector wedge(const KVector& a, const KVector& b);

// Hodge star on k-vectors of R^n (any k), mapping e_I to sign(I, I^c) e_{I^c}.
// Throws UnsupportedDimension if n > kMaxDim.
KVector hodge_star(const KVector& w);

// For n = 4: p12 p34 - p13 p24 + p14 p23 (signed). Otherwise |w ^ w|_2.
double plucker_defect(const Bivector& w);

// Orthonormal pair spanning a simple bivector, using the two largest-norm
// independent columns of its antisymmetric coordinate matrix.
Plane2 plane_of(const Bivector& w);

// Orthonormal basis of the orthogonal complement of a plane in R^n. Standard
// basis vectors are projected out greedily by largest residual.
std::vector<VecN> orthogonal_complement(const Plane2& plane);

// Plane spanned by two standard Gaussian vectors drawn from stream
// (seed, stream); rotation invariant on Gr(2, n).
Plane2 random_plane(std::uint64_t seed, int n, std::uint64_t stream = 0);

}  // namespace bhd
