#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bhd/bodies.hpp"
#include "bhd/geom.hpp"

namespace bhd {

struct Point2 {
  double x, y;
};

// Convex polygon in plane coordinates, counterclockwise, no repeated vertices.
struct Polygon2 {
  std::vector<Point2> vertices;
};

// Coefficients (a_j, b_j) = (l_j(u), l_j(v)); the section in plane
// coordinates is {(x, y) : sum_j |a_j x + b_j y| <= 1}.
struct LineCoeffs {
  double a, b;
};

enum class SectionMethod { ExactHalfplane, Radial };

struct SectionReport {
  Polygon2 polygon;  // exact polygon, or the radial boundary samples
  double euclidean_area = 0.0;
  SectionMethod method = SectionMethod::ExactHalfplane;
  std::size_t radial_samples = 0;

  std::string method_name() const;
};

std::vector<LineCoeffs> section_constraints(const AbsSumBody& body, const Plane2& plane);

// Exact polygon {sum_j |a_j x + b_j y| <= 1}, clipped out of a square of the
// given half-width by all 2^k sign half-planes. Throws UnboundedSection if the
// result still touches the square.
Polygon2 abs_sum_polygon(std::span<const LineCoeffs> coeffs, double half_width);

// Central section of the body by the plane. Polyhedral bodies (and products
// whose plane lies inside a polyhedral factor) use the exact half-plane path;
// everything else is sampled radially at radial_samples angles (0 selects the
// configured default).
SectionReport cross_section(const Body& body, const Plane2& plane, std::size_t radial_samples = 0);

// Area only; same paths as cross_section.
double section_area(const Body& body, const Plane2& plane, std::size_t radial_samples = 0);

// Radial estimate regardless of body type: 1/2 sum r(theta_i)^2 * (2 pi / N).
double radial_section_area(const Body& body, const Plane2& plane, std::size_t samples);

double shoelace_area(const Polygon2& p);

}  // namespace bhd
