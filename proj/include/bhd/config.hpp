#pragma once

#include <cstddef>

namespace bhd {

inline constexpr const char* kToolkitVersion = "0.4.0";

// Process-wide numeric tolerances. Set once before starting work; the
// library reads them but never writes them.
struct Tolerances {
  // Orthonormality of plane bases and other normalized quantities.
  double geometric = 1e-12;
  // Gram determinant below which two vectors are treated as dependent.
  double gram = 1e-12;
  // Vertex pruning distance and collinearity area in plane coordinates.
  double vertex_prune = 1e-12;
  // Relative Plücker defect accepted as "simple".
  double simplicity = 1e-9;
  // Resampling threshold (normalized Gram determinant) for random draws.
  double resample = 1e-9;
  // Default number of angles for radial section sampling.
  std::size_t radial_samples = 4096;
};

const Tolerances& tolerances() noexcept;
void set_tolerances(const Tolerances& t) noexcept;

// Worker count used by the certificate grid and Monte Carlo paths.
// 0 means std::thread::hardware_concurrency().
void set_thread_count(unsigned n) noexcept;
unsigned thread_count() noexcept;

}  // namespace bhd
