#include "botsig/codec.hpp"

#include <algorithm>
#include <array>

namespace botsig {

namespace {

constexpr std::array<std::uint8_t, 5> kMagic{'B', 'S', 'I', 'G', '1'};

constexpr std::array<std::pair<SchemeTag, std::string_view>, 6> kSchemeNames{{
    {SchemeTag::Oms, "oms"},
    {SchemeTag::Oms2, "oms2"},
    {SchemeTag::Stateful, "stateful"},
    {SchemeTag::Stateless, "stateless"},
    {SchemeTag::AmplifiedSuf, "amp-suf"},
    {SchemeTag::AmplifiedUf, "amp-uf"},
}};

}  // namespace

void ByteWriter::u32(std::uint32_t n) {
  for (int i = 3; i >= 0; --i) u8(static_cast<std::uint8_t>(n >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t n) {
  for (int i = 7; i >= 0; --i) u8(static_cast<std::uint8_t>(n >> (8 * i)));
}

void ByteWriter::blob(std::span<const std::uint8_t> data) {
  u32(static_cast<std::uint32_t>(data.size()));
  raw(data);
}

void ByteWriter::bits(const Bits& b) {
  u32(static_cast<std::uint32_t>(b.size()));
  raw(b.bytes());
}

std::span<const std::uint8_t> ByteReader::raw(std::size_t n) {
  if (n > data_.size() - pos_) throw DecodeError("truncated input");
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::u8() { return raw(1)[0]; }

std::uint32_t ByteReader::u32() {
  std::uint32_t n = 0;
  for (auto b : raw(4)) n = (n << 8) | b;
  return n;
}

std::uint64_t ByteReader::u64() {
  std::uint64_t n = 0;
  for (auto b : raw(8)) n = (n << 8) | b;
  return n;
}

std::span<const std::uint8_t> ByteReader::blob() { return raw(u32()); }

Bits ByteReader::bits() {
  const std::uint32_t n = u32();
  const auto payload = raw((static_cast<std::size_t>(n) + 7) / 8);
  Bits b = Bits::from_bytes(payload, n);
  if (!std::equal(payload.begin(), payload.end(), b.bytes().begin())) {
    throw DecodeError("nonzero padding bits");
  }
  return b;
}

bool ByteReader::flag() {
  const std::uint8_t b = u8();
  if (b > 1) throw DecodeError("invalid presence byte");
  return b == 1;
}

std::uint32_t ByteReader::count() {
  const std::uint32_t n = u32();
  if (n > data_.size() - pos_) throw DecodeError("element count exceeds input size");
  return n;
}

void ByteReader::expect_end() const {
  if (!done()) throw DecodeError("trailing bytes after value");
}

Bytes encode_envelope(const Envelope& env) {
  ByteWriter w;
  w.raw(kMagic);
  w.u8(static_cast<std::uint8_t>(env.tag));
  w.u8(static_cast<std::uint8_t>(env.kind));
  w.blob(std::span(reinterpret_cast<const std::uint8_t*>(env.profile.data()), env.profile.size()));
  w.blob(env.body);
  return w.take();
}

Envelope decode_envelope(std::span<const std::uint8_t> data) {
  ByteReader r(data);
  const auto magic = r.raw(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw DecodeError("not a BSIG1 file");
  }
  Envelope env;
  const std::uint8_t tag = r.u8();
  if (tag < 1 || tag > 6) throw DecodeError("unknown scheme tag");
  env.tag = static_cast<SchemeTag>(tag);
  const std::uint8_t kind = r.u8();
  if (kind < 1 || kind > 3) throw DecodeError("unknown artifact kind");
  env.kind = static_cast<ArtifactKind>(kind);
  const auto profile = r.blob();
  env.profile.assign(profile.begin(), profile.end());
  const auto body = r.blob();
  env.body.assign(body.begin(), body.end());
  r.expect_end();
  return env;
}

std::string_view scheme_name(SchemeTag tag) {
  for (const auto& [t, name] : kSchemeNames) {
    if (t == tag) return name;
  }
  return "unknown";
}

SchemeTag scheme_from_name(std::string_view name) {
  for (const auto& [t, n] : kSchemeNames) {
    if (n == name) return t;
  }
  throw PreconditionViolated("unknown scheme '" + std::string(name) + "'");
}

}  // namespace botsig
