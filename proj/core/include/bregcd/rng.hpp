#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace bregcd {

/// Deterministic PRNG used everywhere randomness is needed.
///
/// mt19937_64 output is pinned by the C++ standard, and the derived draws
/// below avoid std::*_distribution (whose streams are implementation
/// defined), so identical seeds give identical results on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Log-uniform double on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return lo * std::exp(uniform01() * std::log(hi / lo));
  }

  /// Uniform index in {0, ..., n-1} via 128-bit multiply (no modulo bias
  /// worth speaking of at the block counts used here).
  int uniform_index(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(engine_()) *
                             static_cast<unsigned __int128>(n)) >>
                            64);
  }

  /// Fisher-Yates shuffle with this engine; std::shuffle is not
  /// reproducible across standard libraries.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_index(static_cast<int>(i)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bregcd
