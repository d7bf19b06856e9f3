#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace crossres {

/// Deterministic random source used everywhere randomness is needed.
/// All helpers draw a fixed number of engine words, so replaying a seed
/// replays the exact decision sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Uniform index in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ull;

inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t basis = kFnvOffsetBasis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace crossres
