#pragma once

#include <cstdint>
#include <random>

namespace choice_attach {

/// Deterministic generator: std::mt19937_64 seeded with the 64-bit seed.
/// The engine's output sequence is fixed by the C++ standard (the 10000th
/// output of a default-seeded engine is 9981545732273789042). Bounded
/// integers and unit doubles are derived here rather than through the
/// implementation-defined std distributions, so a seed reproduces the same
/// stream on every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 5489u) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, bound), bound > 0. Lemire's multiply-and-reject.
  std::uint64_t uniform_below(std::uint64_t bound) {
    unsigned __int128 product = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace choice_attach
