#include "botsig/xof.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace botsig {

namespace {

const EVP_MD* shake256() {
  static const EVP_MD* md = EVP_shake256();
  return md;
}

}  // namespace

struct Shake256::Ctx {
  EVP_MD_CTX* md = nullptr;
};

Shake256::Shake256(std::string_view domain) : ctx_(new Ctx) {
  ctx_->md = EVP_MD_CTX_new();
  if (ctx_->md == nullptr || EVP_DigestInit_ex(ctx_->md, shake256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx_->md);
    delete ctx_;
    throw std::runtime_error("SHAKE256 initialization failed");
  }
  absorb(domain);
}

Shake256::~Shake256() {
  EVP_MD_CTX_free(ctx_->md);
  delete ctx_;
}

void Shake256::raw(const void* data, std::size_t len) {
  if (len != 0 && EVP_DigestUpdate(ctx_->md, data, len) != 1) {
    throw std::runtime_error("SHAKE256 update failed");
  }
}

Shake256& Shake256::absorb_u64(std::uint64_t value) {
  std::uint8_t buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(value >> (56 - 8 * i));
  raw(buf, sizeof buf);
  return *this;
}

Shake256& Shake256::absorb(std::span<const std::uint8_t> data) {
  absorb_u64(data.size());
  raw(data.data(), data.size());
  return *this;
}

Shake256& Shake256::absorb(const Bits& bits) {
  absorb_u64(bits.size());
  raw(bits.bytes().data(), bits.bytes().size());
  return *this;
}

Shake256& Shake256::absorb(std::string_view text) {
  absorb_u64(text.size());
  raw(text.data(), text.size());
  return *this;
}

void Shake256::squeeze_into(std::span<std::uint8_t> out) {
  if (EVP_DigestFinalXOF(ctx_->md, out.data(), out.size()) != 1) {
    throw std::runtime_error("SHAKE256 squeeze failed");
  }
}

Bytes Shake256::squeeze(std::size_t nbytes) {
  Bytes out(nbytes);
  squeeze_into(out);
  return out;
}

std::uint64_t load_u64_be(std::span<const std::uint8_t> bytes) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | bytes[i];
  return v;
}

}  // namespace botsig
