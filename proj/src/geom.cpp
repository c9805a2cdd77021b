#include "bhd/geom.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>

#include "bhd/config.hpp"
#include "bhd/error.hpp"
#include "bhd/rng.hpp"

namespace bhd {

namespace {

struct SubsetTables {
  // masks[n][k] lists k-subsets of {0..n-1} in lexicographic order.
  std::array<std::array<std::vector<std::uint32_t>, kMaxDim + 1>, kMaxDim + 1> masks;
  std::array<std::array<std::uint16_t, 1u << kMaxDim>, kMaxDim + 1> index{};

  SubsetTables() {
    for (int n = 0; n <= kMaxDim; ++n) {
      for (int k = 0; k <= n; ++k) {
        std::vector<int> pick(static_cast<std::size_t>(k));
        std::iota(pick.begin(), pick.end(), 0);
        auto& out = masks[n][k];
        while (true) {
          std::uint32_t m = 0;
          for (int i : pick) m |= 1u << i;
          index[n][m] = static_cast<std::uint16_t>(out.size());
          out.push_back(m);
          int pos = k - 1;
          while (pos >= 0 && pick[pos] == n - k + pos) --pos;
          if (pos < 0) break;
          ++pick[pos];
          for (int j = pos + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
      }
    }
  }
};

const SubsetTables& tables() {
  static const SubsetTables t;
  return t;
}

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) BHD_THROW(UnsupportedDimension, "dimension " << n << " outside 1.." << kMaxDim);
}

// Sign of the permutation that sorts the concatenation (I, J) of two disjoint
// increasing index sets.
double merge_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  for (std::uint32_t m = a; m; m &= m - 1) {
    const int i = std::countr_zero(m);
    inversions += std::popcount(b & ((1u << i) - 1));
  }
  return (inversions & 1) ? -1.0 : 1.0;
}

}  // namespace

std::size_t subset_count(int n, int k) {
  check_dim(n);
  if (k < 0 || k > n) BHD_THROW(InvalidArgument, "degree " << k << " outside 0.." << n);
  return tables().masks[n][k].size();
}

std::uint32_t subset_mask(int n, int k, std::size_t index) {
  return tables().masks.at(n).at(k).at(index);
}

std::size_t subset_index(int n, int k, std::uint32_t mask) {
  if (std::popcount(mask) != k || mask >= (1u << n)) BHD_THROW(InvalidArgument, "bad subset mask");
  return tables().index[n][mask];
}

VecN basis_vector(int n, int i) {
  VecN e = VecN::Zero(n);
  e[i] = 1.0;
  return e;
}

VecN make_vec(std::span<const double> values) {
  check_dim(static_cast<int>(values.size()));
  VecN v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  return v;
}

// ---------------------------------------------------------------- Plane2

Plane2 Plane2::from_orthonormal(const VecN& u, const VecN& v) {
  if (u.size() != v.size()) BHD_THROW(DimensionMismatch, "plane basis vectors differ in dimension");
  check_dim(static_cast<int>(u.size()));
  const double tol = tolerances().geometric;
  if (std::abs(u.norm() - 1.0) > tol || std::abs(v.norm() - 1.0) > tol ||
      std::abs(u.dot(v)) > tol) {
    BHD_THROW(InvalidArgument, "plane basis is not orthonormal");
  }
  if (!u.allFinite() || !v.allFinite()) BHD_THROW(InvalidArgument, "non-finite plane basis");
  return Plane2(u, v);
}

Plane2 Plane2::embedded(int m) const {
  if (m < dim()) BHD_THROW(DimensionMismatch, "cannot embed R^" << dim() << " into R^" << m);
  VecN a = VecN::Zero(m), b = VecN::Zero(m);
  a.head(dim()) = u_;
  b.head(dim()) = v_;
  return Plane2(a, b);
}

Plane2 gram_schmidt(const VecN& a, const VecN& b) {
  if (a.size() != b.size()) BHD_THROW(DimensionMismatch, "gram_schmidt: dimensions differ");
  check_dim(static_cast<int>(a.size()));
  const double aa = a.squaredNorm(), bb = b.squaredNorm(), ab = a.dot(b);
  if (!(aa * bb - ab * ab > tolerances().gram)) {
    BHD_THROW(DegenerateSpan, "gram_schmidt: vectors are linearly dependent");
  }
  VecN u = a / std::sqrt(aa);
  VecN v = b - u.dot(b) * u;
  v -= u.dot(v) * u;  // second pass keeps orthogonality at rounding level
  v /= v.norm();
  return Plane2::from_orthonormal(u, v);
}

double grassmann_distance(const Plane2& p, const Plane2& q) {
  if (p.dim() != q.dim()) BHD_THROW(DimensionMismatch, "grassmann_distance: dimensions differ");
  Eigen::Matrix2d m;
  m << q.u().dot(p.u()), q.u().dot(p.v()), q.v().dot(p.u()), q.v().dot(p.v());
  const Eigen::JacobiSVD<Eigen::Matrix2d> svd(m, Eigen::ComputeFullV);
  // Principal angles as atan2(sin, cos).
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector2d c = svd.matrixV().col(i);
    const VecN x = c[0] * p.u() + c[1] * p.v();
    const VecN r = x - q.u().dot(x) * q.u() - q.v().dot(x) * q.v();
    const double theta = std::atan2(r.norm(), svd.singularValues()[i]);
    sum += theta * theta;
  }
  return std::sqrt(sum);
}

// ---------------------------------------------------------------- KVector

KVector::KVector(int n, int degree) : n_(n), k_(degree), coords_(subset_count(n, degree), 0.0) {}

KVector::KVector(int n, int degree, std::vector<double> coords)
    : n_(n), k_(degree), coords_(std::move(coords)) {
  if (coords_.size() != subset_count(n, degree)) {
    BHD_THROW(DimensionMismatch, "expected " << subset_count(n, degree) << " coordinates for a "
                                             << degree << "-vector in R^" << n << ", got "
                                             << coords_.size());
  }
  for (double c : coords_)
    if (!std::isfinite(c)) BHD_THROW(InvalidArgument, "non-finite multivector coordinate");
}

double KVector::at(std::span<const int> indices) const {
  std::uint32_t mask = 0;
  for (int i : indices) mask |= 1u << i;
  return coords_[subset_index(n_, k_, mask)];
}

double KVector::norm() const {
  double s = 0.0;
  for (double c : coords_) s += c * c;
  return std::sqrt(s);
}

bool KVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double c) { return c == 0.0; });
}

KVector KVector::operator+(const KVector& o) const {
  if (o.n_ != n_ || o.k_ != k_) BHD_THROW(DimensionMismatch, "adding multivectors of different shape");
  KVector r = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] += o.coords_[i];
  return r;
}

KVector KVector::operator-(const KVector& o) const { return *this + o * -1.0; }

KVector KVector::operator*(double s) const {
  KVector r = *this;
  for (double& c : r.coords_) c *= s;
  return r;
}

KVector operator*(double s, const KVector& w) { return w * s; }

Bivector wedge(const VecN& u, const VecN& v) {
  if (u.size() != v.size()) BHD_THROW(DimensionMismatch, "wedge: dimensions differ");
  const int n = static_cast<int>(u.size());
  check_dim(n);
  Bivector w(n, 2);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w[idx++] = u[i] * v[j] - u[j] * v[i];
  return w;
}

KVector wedge(const KVector& a, const KVector& b) {
  if (a.dim() != b.dim()) BHD_THROW(DimensionMismatch, "wedge: dimensions differ");
  const int n = a.dim();
  const int k = a.degree() + b.degree();
  if (k > n) BHD_THROW(InvalidArgument, "wedge: degree " << k << " exceeds dimension " << n);
  KVector r(n, k);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    const std::uint32_t mi = subset_mask(n, a.degree(), i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint32_t mj = subset_mask(n, b.degree(), j);
      if (mi & mj) continue;
      r[subset_index(n, k, mi | mj)] += merge_sign(mi, mj) * a[i] * b[j];
    }
  }
  return r;
}

KVector hodge_star(const KVector& w) {
  const int n = w.dim();
  if (n > kMaxDim) BHD_THROW(UnsupportedDimension, "hodge_star supports n <= " << kMaxDim);
  const int k = w.degree();
  const std::uint32_t full = (1u << n) - 1u;
  KVector r(n, n - k);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::uint32_t m = subset_mask(n, k, i);
    r[subset_index(n, n - k, full & ~m)] = merge_sign(m, full & ~m) * w[i];
  }
  return r;
}

double plucker_defect(const Bivector& w) {
  if (w.degree() != 2) BHD_THROW(InvalidArgument, "plucker_defect expects a bivector");
  if (w.dim() == 4) return w[0] * w[5] - w[1] * w[4] + w[2] * w[3];
  if (w.dim() < 4) return 0.0;
  return wedge(w, w).norm();
}

Plane2 plane_of(const Bivector& w) {
  if (w.degree() != 2) BHD_THROW(InvalidArgument, "plane_of expects a bivector");
  if (w.is_zero()) BHD_THROW(ZeroBivector, "zero bivector spans no plane");
  const double scale = w.norm() * w.norm();
  if (std::abs(plucker_defect(w)) > tolerances().simplicity * scale) BHD_THROW(NotSimple, "bivector is not simple");
  const int n = w.dim();
  MatN m = MatN::Zero(n, n);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = w[idx];
      m(j, i) = -w[idx];
      ++idx;
    }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return m.col(a).norm() > m.col(b).norm(); });
  const VecN first = m.col(order[0]);
  for (std::size_t t = 1; t < order.size(); ++t) {
    const VecN second = m.col(order[t]);
    const double aa = first.squaredNorm(), bb = second.squaredNorm(), ab = first.dot(second);
    if (bb > 0.0 && (aa * bb - ab * ab) > tolerances().resample * aa * bb) return gram_schmidt(first, second);
  }
  BHD_THROW(NotSimple, "bivector has rank below two");
}

std::vector<VecN> orthogonal_complement(const Plane2& plane) {
  const int n = plane.dim();
  std::vector<VecN> basis{plane.u(), plane.v()};
  std::vector<VecN> out;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int step = 0; step < n - 2; ++step) {
    int best = -1;
    VecN best_res;
    double best_norm = -1.0;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      VecN r = basis_vector(n, i);
      for (int pass = 0; pass < 2; ++pass)
        for (const VecN& q : basis) r -= q.dot(r) * q;
      const double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = i;
        best_res = r;
      }
    }
    used[best] = true;
    best_res /= best_norm;
    basis.push_back(best_res);
    out.push_back(best_res);
  }
  return out;
}

Plane2 random_plane(std::uint64_t seed, int n, std::uint64_t stream) {
  check_dim(n);
  if (n < 2) BHD_THROW(InvalidArgument, "random_plane needs n >= 2");
  CounterRng rng(seed, stream);
  while (true) {
    VecN a(n), b(n);
    for (int i = 0; i < n; ++i) a[i] = rng.gaussian();
    for (int i = 0; i < n; ++i) b[i] = rng.gaussian();
    const double aa = a.squaredNorm(), bb = b.squaredNorm(), ab = a.dot(b);
    if (aa * bb - ab * ab > tolerances().resample * aa * bb) return gram_schmidt(a, b);
  }
}

}  // namespace bhd
