#include "botsig/bits.hpp"

#include <algorithm>

#include "botsig/errors.hpp"

namespace botsig {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

Bits::Bits(std::size_t nbits) : bytes_((nbits + 7) / 8, 0), nbits_(nbits) {}

Bits Bits::from_string(std::string_view text) {
  Bits out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      out.set(i, true);
    } else if (text[i] != '0') {
      throw DecodeError("bitstring may only contain '0' and '1'");
    }
  }
  return out;
}

Bits Bits::from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (bytes.size() * 8 < nbits) {
    throw InvalidLength("not enough bytes for requested bit length");
  }
  Bits out(nbits);
  std::copy_n(bytes.begin(), out.bytes_.size(), out.bytes_.begin());
  out.clear_tail();
  return out;
}

Bits Bits::from_hex(std::string_view hex) { return from_hex(hex, hex.size() * 4); }

Bits Bits::from_hex(std::string_view hex, std::size_t nbits) {
  if (nbits > hex.size() * 4 || hex.size() != (nbits + 3) / 4) {
    throw InvalidLength("hex length does not match bit length " + std::to_string(nbits));
  }
  Bits out(hex.size() * 4);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const int v = hex_value(hex[i]);
    if (v < 0) throw DecodeError("invalid hex digit");
    for (int b = 0; b < 4; ++b) {
      out.set(i * 4 + b, (v >> (3 - b)) & 1);
    }
  }
  for (std::size_t i = nbits; i < out.size(); ++i) {
    if (out[i]) throw DecodeError("nonzero padding bits in hex");
  }
  out.nbits_ = nbits;
  out.bytes_.resize((nbits + 7) / 8);
  return out;
}

bool Bits::at(std::size_t i) const {
  if (i >= nbits_) throw InvalidLength("bit index out of range");
  return (*this)[i];
}

void Bits::set(std::size_t i, bool value) {
  if (i >= nbits_) throw InvalidLength("bit index out of range");
  const auto mask = static_cast<std::uint8_t>(1U << (7 - (i & 7)));
  if (value) {
    bytes_[i >> 3] |= mask;
  } else {
    bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
  }
}

void Bits::flip(std::size_t i) { set(i, !at(i)); }

Bits Bits::slice(std::size_t pos, std::size_t len) const {
  if (pos > nbits_ || len > nbits_ - pos) throw InvalidLength("slice out of range");
  Bits out(len);
  if ((pos & 7) == 0) {
    std::copy_n(bytes_.begin() + static_cast<std::ptrdiff_t>(pos >> 3), out.bytes_.size(),
                out.bytes_.begin());
    out.clear_tail();
    return out;
  }
  for (std::size_t i = 0; i < len; ++i) {
    if ((*this)[pos + i]) out.set(i, true);
  }
  return out;
}

void Bits::append(const Bits& other) {
  const std::size_t old = nbits_;
  nbits_ += other.nbits_;
  bytes_.resize((nbits_ + 7) / 8, 0);
  if ((old & 7) == 0) {
    std::copy(other.bytes_.begin(), other.bytes_.end(),
              bytes_.begin() + static_cast<std::ptrdiff_t>(old >> 3));
    return;
  }
  for (std::size_t i = 0; i < other.nbits_; ++i) {
    if (other[i]) set(old + i, true);
  }
}

void Bits::push_back(bool bit) {
  ++nbits_;
  bytes_.resize((nbits_ + 7) / 8, 0);
  set(nbits_ - 1, bit);
}

Bits Bits::concat(const Bits& other) const {
  Bits out = *this;
  out.append(other);
  return out;
}

Bits& Bits::operator^=(const Bits& other) {
  if (other.nbits_ != nbits_) throw InvalidLength("xor of bitstrings with different lengths");
  for (std::size_t i = 0; i < bytes_.size(); ++i) bytes_[i] ^= other.bytes_[i];
  return *this;
}

std::string Bits::to_string() const {
  std::string out(nbits_, '0');
  for (std::size_t i = 0; i < nbits_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::string Bits::to_hex() const {
  const std::size_t digits = (nbits_ + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    const std::uint8_t byte = bytes_[d / 2];
    out[d] = kHexDigits[(d % 2 == 0) ? (byte >> 4) : (byte & 0xF)];
  }
  return out;
}

std::strong_ordering operator<=>(const Bits& a, const Bits& b) {
  if (auto c = a.nbits_ <=> b.nbits_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.bytes_.begin(), a.bytes_.end(),
                                                b.bytes_.begin(), b.bytes_.end());
}

void Bits::clear_tail() noexcept {
  if (nbits_ & 7) {
    bytes_.back() &= static_cast<std::uint8_t>(0xFF << (8 - (nbits_ & 7)));
  }
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xF]);
  }
  return out;
}

Bytes bytes_from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw DecodeError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw DecodeError("invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

}  // namespace botsig
