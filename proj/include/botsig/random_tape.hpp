#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>

#include "botsig/bits.hpp"

namespace botsig {

/// Explicit, reproducible randomness source. Every probabilistic step in the
/// library draws from a tape passed by the caller; nothing reads ambient
/// entropy. Identical seeds give identical streams, and split() derives
/// child tapes that depend only on (seed, label), not on how much of the
/// parent has been consumed.
class RandomTape {
 public:
  explicit RandomTape(std::uint64_t seed);
  /// Seeds from arbitrary material (e.g. coin bits handed to a keygen).
  static RandomTape from_material(std::span<const std::uint8_t> material);
  static RandomTape from_bits(const Bits& coins);

  RandomTape split(std::uint64_t label) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  bool coin() { return (engine_() >> 63) != 0; }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  Bits bits(std::size_t nbits);

 private:
  RandomTape(std::span<const std::uint8_t, 32> seed_material);

  std::array<std::uint8_t, 32> seed_{};
  std::mt19937_64 engine_;
};

}  // namespace botsig
