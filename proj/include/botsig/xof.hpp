#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>

#include "botsig/bits.hpp"

namespace botsig {

/// Incremental SHAKE256 absorber. Each absorbed field is length-prefixed,
/// so distinct field sequences never collide by concatenation.
class Shake256 {
 public:
  explicit Shake256(std::string_view domain);
  Shake256(const Shake256&) = delete;
  Shake256& operator=(const Shake256&) = delete;
  ~Shake256();

  Shake256& absorb(std::span<const std::uint8_t> data);
  Shake256& absorb(const Bits& bits);
  Shake256& absorb(std::string_view text);
  Shake256& absorb_u64(std::uint64_t value);

  /// Finalizes and squeezes; the object cannot absorb afterwards.
  Bytes squeeze(std::size_t nbytes);
  void squeeze_into(std::span<std::uint8_t> out);

 private:
  void raw(const void* data, std::size_t len);

  struct Ctx;
  Ctx* ctx_;
};

std::uint64_t load_u64_be(std::span<const std::uint8_t> bytes);

/// Maps 64 hash bits to [0, 1).
inline double unit_interval(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace botsig
