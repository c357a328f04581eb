#pragma once

#include <cstdint>

namespace msddp {

/// One SplitMix64 step. Fully specified, so streams are identical on every
/// platform and compiler.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seedable, splittable pseudo-random stream. `child(tag)` derives an
/// independent stream without advancing the parent, which keeps parallel
/// consumers reproducible regardless of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix(0x243f6a8885a308d3ULL, seed)) {}

  Rng child(std::uint64_t tag) const { return Rng(mix(state_, tag), 0); }

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform draw in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Exactly uniform index in {0, ..., n-1} via rejection sampling.
  int next_index(int n) {
    if (n <= 1) return 0;
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t draw;
    do {
      draw = next_u64();
    } while (draw >= limit);
    return static_cast<int>(draw % un);
  }

 private:
  Rng(std::uint64_t raw_state, int) : state_(raw_state) {}

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    splitmix64(s);
    return s;
  }

  std::uint64_t state_;
};

}  // namespace msddp
