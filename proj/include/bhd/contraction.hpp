#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bhd/bodies.hpp"
#include "bhd/geom.hpp"

namespace bhd {

// Linear projection of R^n onto span(e1, e2) with matrix
//   [1 0 a b; 0 1 c d; 0 ...]
// acting as zero on coordinates 5..n.
struct ProjectionW0 {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  MatN matrix(int n = 4) const;
  // First two coordinates of the image of x.
  std::array<double, 2> apply(const VecN& x) const;
};

// Index 1..8 selects the perturbation planes of span(e1, e2) at epsilon;
// index 9 is the fixed far plane and ignores epsilon.
struct PlaneFamilyId {
  int index = 1;
  double epsilon = 0.0;
};

Plane2 w0_plane(int n = 4);
Plane2 family_plane(const PlaneFamilyId& id);
std::string plane_label(const PlaneFamilyId& id);

// |pi(u) ^ pi(v)|_2: the factor by which p scales the area of subsets of the plane.
double area_factor(const ProjectionW0& p, const Plane2& plane);

// lambda * H^2(body cap plane) - H^2(body cap W0); positive exactly when p
// increases the normed area of discs in the plane.
double contraction_gap(const Body& body, const ProjectionW0& p, const Plane2& plane);

enum class LemmaFamily { V1V2, V3V4 };

// Closed-form inscribed-quadrilateral lower bounds for the section areas of the
// V1/V2 and V3/V4 planes; |eps| < 0.5.
double lemma_lower_bound(LemmaFamily family, double eps);

// Section-boundary points of the V1 plane on the rays y = 0, x = 0 and
// x(1 - eps) = y(1 + eps), in the plane's own coordinates.
struct QuadrilateralPoints {
  double x_axis;    // intercept on y = 0
  double y_axis;    // intercept on x = 0
  double corner_x;  // point on x(1-eps) = y(1+eps)
  double corner_y;
};
QuadrilateralPoints lemma1_extreme_points(double eps);

struct TaylorFit {
  double constant;
  double quadratic;
  double quartic;
  double max_residual;
};

// Least-squares fit f(e) ~ c0 + c2 e^2 + c4 e^4 over the grid. Requires >= 4
// distinct points in (0, 0.05] spanning at least a decade, and f even.
TaylorFit taylor_fit(const std::function<double(double)>& area_fn, std::span<const double> eps_grid);

struct PinningInterval {
  std::string combination;  // "a+d", "a-d", "b+c", "b-c"
  double lower;
  double upper;
  double width() const { return upper - lower; }  // negative: no admissible value
};

// Linearized constraints from the eight perturbation planes at eps.
std::array<PinningInterval, 4> proposition_pinning(const Body& body, double eps);

// ----------------------------------------------------------------- certificate

struct CertificateConfig {
  double box_halfwidth = 4.0;
  int grid_n = 33;
  std::vector<double> eps_set{0.02, 0.05, 0.1};
  int extra_planes = 64;
  std::uint64_t seed = 1;
  double gap_threshold = 1e-3;
  double refine_fraction = 0.01;
  int ascent_iterations = 200;
  int ascent_starts = 8;
  int exterior_radii = 8;
  double exterior_factor = 10.0;
};

struct FamilyPlane {
  std::string label;
  Plane2 plane;
  double section_area;
};

struct EvaluatedPoint {
  std::array<double, 4> params;
  double family_gap;     // max gap over the fixed plane family
  int family_witness;    // index into Certificate::planes
  double gap;            // best known gap (>= family_gap)
  int witness;           // family plane the best ascent started from
  bool ascended = false;
  std::optional<Plane2> ascended_plane;
};

struct ExteriorReport {
  int rays = 0;
  std::vector<double> radii;
  int non_monotone_rays = 0;
  double min_gap_at_box = 0.0;
  bool ok = false;
};

struct Certificate {
  CertificateConfig config;
  std::string body_label;
  double w0_area = 0.0;
  std::vector<FamilyPlane> planes;
  std::size_t grid_cells = 0;
  std::size_t refined_points = 0;
  std::size_t positive_cells = 0;       // grid cells whose best gap is positive
  std::vector<int> witness_histogram;  // grid cells per family witness
  std::vector<EvaluatedPoint> ascended;  // ascended points, ascending by gap
  EvaluatedPoint global_min;
  ExteriorReport exterior;
  bool success = false;
  double runtime_seconds = 0.0;
};

// Numeric search for a projection onto W0 that does not increase normed area:
// the maximum contraction gap over a plane family, raised by local ascent, is
// minimized over a parameter grid with one level of refinement. Returns the
// certificate whether or not it succeeds.
Certificate certify_no_contraction(const Body& body, const CertificateConfig& config);

// Throws CertificateFailed with the offending parameter point when !success.
void require_success(const Certificate& cert);

// Coordinate search with step halving over the raw basis of a plane inside
// R^4 x {0}, maximizing contraction_gap.
struct AscentResult {
  Plane2 plane;
  double gap;
  int iterations;
};
AscentResult local_ascent(const Body& body, const ProjectionW0& p, const Plane2& start,
                          int max_iterations, double w0_area);

}  // namespace bhd
