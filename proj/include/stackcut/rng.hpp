#pragma once

#include <cstdint>
#include <random>

namespace stackcut {

/// SplitMix64 finalizer. Used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for worker `index` derived from a base seed. Stable across platforms.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Seeded random source. Doubles are built from the top 53 bits of
/// mt19937_64 output so that streams are identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [0, 1]; both endpoints reachable.
  double uniform_closed() noexcept {
    return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740991.0);
  }

  /// Uniform integer on [0, bound) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound) noexcept;

  std::uint64_t next() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace stackcut
