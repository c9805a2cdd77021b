#include "bhd/bodies.hpp"

#include <cmath>
#include <sstream>

#include "bhd/error.hpp"
#include "bhd/rng.hpp"

namespace bhd {

namespace {

constexpr std::uint64_t kProbeSeed = 0x5eed0b0d1e5ULL;

}  // namespace

// ---------------------------------------------------------------- AbsSumBody

AbsSumBody::AbsSumBody(std::vector<VecN> functionals) : functionals_(std::move(functionals)) {
  if (functionals_.empty()) BHD_THROW(InvalidArgument, "abs-sum body needs at least one functional");
  dim_ = static_cast<int>(functionals_.front().size());
  if (dim_ < 1 || dim_ > kMaxDim) BHD_THROW(UnsupportedDimension, "abs-sum body dimension " << dim_);
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(functionals_.size()), dim_);
  for (std::size_t j = 0; j < functionals_.size(); ++j) {
    if (functionals_[j].size() != dim_) BHD_THROW(DimensionMismatch, "functional " << j << " has wrong dimension");
    if (!functionals_[j].allFinite()) BHD_THROW(InvalidArgument, "functional " << j << " is not finite");
    stacked.row(static_cast<Eigen::Index>(j)) = functionals_[j].transpose();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
  qr.setThreshold(1e-10);
  if (qr.rank() < dim_) {
    BHD_THROW(InvalidArgument, "functionals span a " << qr.rank() << "-dimensional space; the body in R^"
                                                    << dim_ << " would be unbounded");
  }
  double sum_norms = 0.0;
  for (const VecN& l : functionals_) sum_norms += l.norm();
  bounds_.r_in = 1.0 / sum_norms;
  // sum_j |l_j x| >= |L x|_2 >= sigma_min(L) |x|_2.
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  bounds_.r_out = 1.0 / svd.singularValues().minCoeff();
}

double AbsSumBody::gauge(const VecN& x) const {
  double s = 0.0;
  for (const VecN& l : functionals_) s += std::abs(l.dot(x));
  return s;
}

// ---------------------------------------------------------------- SmoothBody

namespace {

int kind_dim(const SmoothBody::Kind& kind) {
  struct V {
    int operator()(const EuclideanBall& e) const { return e.n; }
    int operator()(const ComplexLpBall& c) const { return 2 * c.k; }
    int operator()(const ProductBall& p) const { return p.left->dim() + p.euclidean_dim; }
  };
  return std::visit(V{}, kind);
}

}  // namespace

SmoothBody::SmoothBody(Kind kind) : kind_(std::move(kind)) {
  if (const auto* e = std::get_if<EuclideanBall>(&kind_)) {
    if (e->n < 1 || e->n > kMaxDim) BHD_THROW(UnsupportedDimension, "euclidean ball dimension " << e->n);
    bounds_ = {1.0, 1.0};
  } else if (const auto* c = std::get_if<ComplexLpBall>(&kind_)) {
    if (c->k < 1 || 2 * c->k > kMaxDim) BHD_THROW(UnsupportedDimension, "complex dimension " << c->k);
    if (!(c->p >= 1.0) || !std::isfinite(c->p)) BHD_THROW(InvalidArgument, "complex-lp needs finite p >= 1, got " << c->p);
    // Comparison of l_p and l_2 on the vector of moduli.
    const double factor = std::pow(static_cast<double>(c->k), std::abs(0.5 - 1.0 / c->p));
    bounds_ = c->p >= 2.0 ? RadiusBounds{1.0, factor} : RadiusBounds{1.0 / factor, 1.0};
  } else {
    const auto& p = std::get<ProductBall>(kind_);
    if (!p.left) BHD_THROW(InvalidArgument, "product body without left factor");
    if (p.euclidean_dim < 1) BHD_THROW(InvalidArgument, "product euclidean_dim must be >= 1");
    if (p.left->dim() + p.euclidean_dim > kMaxDim) BHD_THROW(UnsupportedDimension, "product dimension too large");
    const RadiusBounds lb = body_radius_bounds(*p.left);
    bounds_ = {std::min(lb.r_in, 1.0), std::hypot(lb.r_out, 1.0)};
  }
  dim_ = kind_dim(kind_);

  CounterRng rng(kProbeSeed ^ 0xabcdefULL, static_cast<std::uint64_t>(dim_));
  if (gauge(VecN::Zero(dim_)) != 0.0) BHD_THROW(InvalidArgument, "gauge does not vanish at the origin");
  for (int r = 0; r < 8; ++r) {
    VecN x(dim_);
    for (int i = 0; i < dim_; ++i) x[i] = rng.gaussian();
    const double g = gauge(x);
    for (double t : {0.5, 3.0}) {
      if (std::abs(gauge(t * x) - t * g) > 1e-10 * t * g) {
        BHD_THROW(InvalidArgument, "gauge is not positively homogeneous");
      }
    }
  }
}

double SmoothBody::gauge(const VecN& x) const {
  if (const auto* c = std::get_if<ComplexLpBall>(&kind_)) {
    double moduli[kMaxDim / 2];
    double biggest = 0.0;
    for (int i = 0; i < c->k; ++i) {
      moduli[i] = std::sqrt(x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
      biggest = std::max(biggest, moduli[i]);
    }
    if (biggest == 0.0) return 0.0;
    double s = 0.0;
    for (int i = 0; i < c->k; ++i) s += std::pow(moduli[i] / biggest, c->p);
    return biggest * std::pow(s, 1.0 / c->p);
  }
  if (std::holds_alternative<EuclideanBall>(kind_)) return x.norm();
  const auto& p = std::get<ProductBall>(kind_);
  const int m = p.left->dim();
  return std::max(p.left->minkowski(x.head(m)), x.tail(p.euclidean_dim).norm());
}

// ---------------------------------------------------------------- Body

int Body::dim() const noexcept {
  return std::visit([](const auto& b) { return b.dim(); }, rep_);
}

double Body::minkowski(const VecN& x) const {
  if (x.size() != dim()) BHD_THROW(DimensionMismatch, "point of dimension " << x.size() << " for body in R^" << dim());
  return std::visit([&](const auto& b) { return b.gauge(x); }, rep_);
}

const ProductBall* Body::product() const noexcept {
  const auto* s = smooth();
  return s ? std::get_if<ProductBall>(&s->kind()) : nullptr;
}

std::string Body::label() const {
  std::ostringstream os;
  if (const auto* a = abs_sum()) {
    os << "abs_sum(n=" << a->dim() << ",k=" << a->functionals().size() << ")";
    return os.str();
  }
  const auto& kind = smooth()->kind();
  if (const auto* e = std::get_if<EuclideanBall>(&kind)) {
    os << "euclidean(n=" << e->n << ")";
  } else if (const auto* c = std::get_if<ComplexLpBall>(&kind)) {
    os << "complex_lp(p=" << c->p << ",k=" << c->k << ")";
  } else {
    const auto& p = std::get<ProductBall>(kind);
    os << "product(" << p.left->label() << ",m=" << p.euclidean_dim << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------- factories

AbsSumBody make_cross_polytope(int n) {
  if (n < 1 || n > kMaxDim) BHD_THROW(UnsupportedDimension, "cross-polytope dimension " << n);
  std::vector<VecN> rows;
  for (int i = 0; i < n; ++i) rows.push_back(basis_vector(n, i));
  return AbsSumBody(std::move(rows));
}

MatN rotation_m() {
  const double r = 1.0 / std::sqrt(2.0);
  MatN m(4, 4);
  m << r, 0.0, 0.5, 0.5,
       0.0, r, -0.5, 0.5,
       r, 0.0, -0.5, -0.5,
       0.0, -r, -0.5, 0.5;
  return m;
}

AbsSumBody make_rotated_cross_polytope() {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<VecN> rows(4, VecN(4));
  rows[0] << r, 0.0, r, 0.0;
  rows[1] << 0.0, r, 0.0, -r;
  rows[2] << 0.5, -0.5, -0.5, -0.5;
  rows[3] << 0.5, 0.5, -0.5, 0.5;
  return AbsSumBody(std::move(rows));
}

Body make_euclidean_ball(int n) { return Body(SmoothBody(EuclideanBall{n})); }

Body make_complex_lp(double p, int k) { return Body(SmoothBody(ComplexLpBall{p, k})); }

Body make_product(Body left, int euclidean_dim) {
  return Body(SmoothBody(ProductBall{std::make_shared<const Body>(std::move(left)), euclidean_dim}));
}

double minkowski(const Body& body, const VecN& x) { return body.minkowski(x); }

RadiusBounds body_radius_bounds(const Body& body) {
  if (const auto* a = body.abs_sum()) return a->radius_bounds();
  return body.smooth()->radius_bounds();
}

}  // namespace bhd
