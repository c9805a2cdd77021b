#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "bhd/config.hpp"
#include "bhd/error.hpp"
#include "bhd/parallel.hpp"
#include "bhd/rng.hpp"

namespace bhd {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateSpan: return "DegenerateSpan";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::ZeroBivector: return "ZeroBivector";
    case ErrorCode::UnboundedSection: return "UnboundedSection";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::CertificateFailed: return "CertificateFailed";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {
Tolerances g_tolerances;
std::atomic<unsigned> g_threads{0};
}  // namespace

const Tolerances& tolerances() noexcept { return g_tolerances; }
void set_tolerances(const Tolerances& t) noexcept { g_tolerances = t; }

void set_thread_count(unsigned n) noexcept { g_threads.store(n); }

unsigned thread_count() noexcept {
  unsigned n = g_threads.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

double CounterRng::gaussian() noexcept {
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

void parallel_chunks(std::size_t count, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t chunks = (count + chunk - 1) / chunk;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), chunks));
  auto run = [&](std::size_t c) {
    const std::size_t b = c * chunk;
    body(c, b, std::min(count, b + chunk));
  };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) {
        try {
          run(c);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bhd
