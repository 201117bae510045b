#include "botsig/random_tape.hpp"

#include <array>

#include "botsig/xof.hpp"

namespace botsig {

namespace {

std::array<std::uint8_t, 32> derive(std::span<const std::uint8_t> material) {
  std::array<std::uint8_t, 32> out{};
  Shake256("botsig/tape/seed").absorb(material).squeeze_into(out);
  return out;
}

}  // namespace

RandomTape::RandomTape(std::span<const std::uint8_t, 32> seed_material) {
  std::copy(seed_material.begin(), seed_material.end(), seed_.begin());
  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); ++i) {
    words[i] = (std::uint32_t{seed_[4 * i]} << 24) | (std::uint32_t{seed_[4 * i + 1]} << 16) |
               (std::uint32_t{seed_[4 * i + 2]} << 8) | std::uint32_t{seed_[4 * i + 3]};
  }
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

RandomTape::RandomTape(std::uint64_t seed) {
  std::uint8_t buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
  *this = RandomTape(std::span<const std::uint8_t, 32>(derive(buf)));
}

RandomTape RandomTape::from_material(std::span<const std::uint8_t> material) {
  const auto seed = derive(material);
  return RandomTape(std::span<const std::uint8_t, 32>(seed));
}

RandomTape RandomTape::from_bits(const Bits& coins) {
  std::array<std::uint8_t, 32> seed{};
  Shake256("botsig/tape/coins").absorb(coins).squeeze_into(seed);
  return RandomTape(std::span<const std::uint8_t, 32>(seed));
}

RandomTape RandomTape::split(std::uint64_t label) const {
  std::array<std::uint8_t, 32> child{};
  Shake256("botsig/tape/split").absorb(seed_).absorb_u64(label).squeeze_into(child);
  return RandomTape(std::span<const std::uint8_t, 32>(child));
}

std::uint64_t RandomTape::below(std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

Bits RandomTape::bits(std::size_t nbits) {
  Bytes raw((nbits + 7) / 8);
  for (std::size_t i = 0; i < raw.size(); i += 8) {
    std::uint64_t w = engine_();
    for (std::size_t j = 0; j < 8 && i + j < raw.size(); ++j) {
      raw[i + j] = static_cast<std::uint8_t>(w >> (56 - 8 * j));
    }
  }
  return Bits::from_bytes(raw, nbits);
}

}  // namespace botsig
