#pragma once

#include <cstdint>
#include <limits>

namespace bhd {

// Counter-based generator: the i-th output of stream (seed, stream) is a pure
// function of (seed, stream, i), so disjoint streams can be drawn from any
// number of workers without changing results. Output mixing is the SplitMix64
// finalizer applied to a keyed counter.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return mix(key_ + (counter_++) * kGolden); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double symmetric() noexcept { return 2.0 * uniform() - 1.0; }

  // Standard normal via Box-Muller; the second variate is discarded so that
  // the draw count per call is fixed.
  double gaussian() noexcept;

  void skip(std::uint64_t n) noexcept { counter_ += n; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace bhd
