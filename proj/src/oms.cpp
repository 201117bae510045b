#include "botsig/signatures/oms.hpp"

#include "botsig/errors.hpp"

namespace botsig {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::Abort: return "abort";
  }
  return "?";
}

void OmsParams::validate() const {
  hash.validate();
  if (hash.in_len != 2 * hash.out_len) {
    throw PreconditionViolated("one-message signatures need a hash compressing 2*lambda to lambda");
  }
  if (msg_bits == 0) throw PreconditionViolated("message length must be positive");
}

std::size_t OmsParams::coin_bits() const noexcept {
  return msg_bits * 2 * (hash.key_len + hash.in_len);
}

OmsScheme::OmsScheme(OmsParams params) : params_(std::move(params)), hash_(params_.hash) {
  params_.validate();
}

OmsScheme::KeyPair OmsScheme::keygen(RandomTape& coins, RandomTape& noise) const {
  KeyPair kp;
  const std::size_t q = params_.msg_bits;
  kp.sk.preimages.resize(q);
  kp.vk.hash_keys.resize(q);
  kp.vk.images.resize(q);
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t b = 0; b < 2; ++b) {
      kp.vk.hash_keys[j][b] = coins.bits(params_.hash.key_len);
      kp.sk.preimages[j][b] = coins.bits(params_.hash.in_len);
    }
  }
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t b = 0; b < 2; ++b) {
      kp.vk.images[j][b] = hash_.eval(kp.vk.hash_keys[j][b], kp.sk.preimages[j][b], noise);
    }
  }
  return kp;
}

MaybeSignature<OmsSignature> OmsScheme::sign(const SigningKey& sk, const Bits& m,
                                             RandomTape&) const {
  if (m.size() != params_.msg_bits) throw InvalidLength("OMS message length mismatch");
  if (sk.preimages.size() != params_.msg_bits) throw InvalidLength("OMS signing key shape mismatch");
  OmsSignature sig;
  sig.preimages.reserve(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) sig.preimages.push_back(sk.preimages[j][m[j]]);
  return sig;
}

Verdict OmsScheme::verify(const VerifyKey& vk, const Bits& m, const MaybeSignature<Signature>& sig,
                          RandomTape& tape) const {
  const std::size_t q = params_.msg_bits;
  if (!sig) return Verdict::Reject;
  if (m.size() != q || sig->preimages.size() != q || vk.hash_keys.size() != q ||
      vk.images.size() != q) {
    return Verdict::Reject;
  }
  for (std::size_t j = 0; j < q; ++j) {
    const Bits& x = sig->preimages[j];
    const BotValue& stored = vk.images[j][m[j]];
    const Bits& key = vk.hash_keys[j][m[j]];
    if (x.size() != params_.hash.in_len || key.size() != params_.hash.key_len) {
      return Verdict::Reject;
    }
    if (stored.is_bot()) return Verdict::Reject;
    const BotValue recomputed = hash_.eval(key, x, tape);
    if (recomputed.is_bot() || recomputed != stored) return Verdict::Reject;
  }
  return Verdict::Accept;
}

std::size_t OmsScheme::vk_bits() const noexcept {
  return params_.msg_bits * 2 * (params_.hash.key_len + 1 + params_.hash.out_len);
}

Bits OmsScheme::encode_vk(const VerifyKey& vk) const {
  const std::size_t q = params_.msg_bits;
  if (vk.hash_keys.size() != q || vk.images.size() != q) {
    throw InvalidLength("OMS verification key shape mismatch");
  }
  Bits out;
  for (std::size_t j = 0; j < q; ++j) {
    for (std::size_t b = 0; b < 2; ++b) {
      if (vk.hash_keys[j][b].size() != params_.hash.key_len) {
        throw InvalidLength("OMS hash key length mismatch");
      }
      out.append(vk.hash_keys[j][b]);
      const BotValue& image = vk.images[j][b];
      out.push_back(!image.is_bot());
      if (image.is_bot()) {
        out.append(Bits(params_.hash.out_len));
      } else {
        if (image.bits().size() != params_.hash.out_len) throw InvalidLength("OMS image length");
        out.append(image.bits());
      }
    }
  }
  return out;
}

}  // namespace botsig
