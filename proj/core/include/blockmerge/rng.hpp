#pragma once

#include <cstdint>
#include <random>

namespace blockmerge {

__extension__ using uint128 = unsigned __int128;

/// splitmix64 step: the output for state x (the state advance by the golden
/// gamma happens inside).
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of stream `index` for a run seeded with `seed`:
/// splitmix64(seed ^ splitmix64(index)). Frozen; acceptance tests pin it.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// mt19937_64 with unbiased bounded integers (Lemire) and 53-bit doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    uint128 m = static_cast<uint128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        m = static_cast<uint128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace blockmerge
