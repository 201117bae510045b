#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace botsig {

using Bytes = std::vector<std::uint8_t>;

/// Fixed-length bitstring, most significant bit first within each byte.
/// Bits past size() in the last byte are always zero, so byte-wise
/// comparison and hashing agree with bitwise equality.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t nbits);

  /// Parses a string of '0'/'1' characters.
  static Bits from_string(std::string_view text);
  static Bits from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);
  /// Parses hex digits; nbits defaults to 4 * digits and may be smaller
  /// provided the dropped tail bits are zero.
  static Bits from_hex(std::string_view hex);
  static Bits from_hex(std::string_view hex, std::size_t nbits);
  static Bits zeros(std::size_t nbits) { return Bits(nbits); }

  std::size_t size() const noexcept { return nbits_; }
  bool empty() const noexcept { return nbits_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1U;
  }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  Bits slice(std::size_t pos, std::size_t len) const;
  void append(const Bits& other);
  void push_back(bool bit);
  Bits concat(const Bits& other) const;

  /// Bitwise XOR; lengths must match.
  Bits& operator^=(const Bits& other);
  friend Bits operator^(Bits lhs, const Bits& rhs) { return lhs ^= rhs; }

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::string to_string() const;
  std::string to_hex() const;

  friend bool operator==(const Bits& a, const Bits& b) = default;
  friend std::strong_ordering operator<=>(const Bits& a, const Bits& b);

 private:
  void clear_tail() noexcept;

  std::vector<std::uint8_t> bytes_;
  std::size_t nbits_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes bytes_from_hex(std::string_view hex);

}  // namespace botsig
