#pragma once

// Length-restricted one-message signatures from a UOWHF with abort.
// sk holds preimages x[j][b], vk holds hash keys k[j][b] and images
// y[j][b] = H(k[j][b], x[j][b]); a signature reveals x[j][m_j].

#include <array>
#include <vector>

#include "botsig/bot_hash.hpp"
#include "botsig/signatures/scheme.hpp"

namespace botsig {

struct OmsParams {
  /// Compresses 2*lambda bits to lambda bits under an l-bit key.
  BotUowhfSpec hash;
  std::size_t msg_bits = 16;

  void validate() const;
  /// Number of coin bits keygen consumes: msg_bits * 2 * (key_len + in_len).
  std::size_t coin_bits() const noexcept;
};

struct OmsSecretKey {
  std::vector<std::array<Bits, 2>> preimages;
  friend bool operator==(const OmsSecretKey&, const OmsSecretKey&) = default;
};

struct OmsVerifyKey {
  std::vector<std::array<Bits, 2>> hash_keys;
  std::vector<std::array<BotValue, 2>> images;
  friend bool operator==(const OmsVerifyKey&, const OmsVerifyKey&) = default;
};

struct OmsSignature {
  std::vector<Bits> preimages;
  friend bool operator==(const OmsSignature&, const OmsSignature&) = default;
};

class OmsScheme {
 public:
  using SigningKey = OmsSecretKey;
  using VerifyKey = OmsVerifyKey;
  using Signature = OmsSignature;
  using KeyPair = BasicKeyPair<SigningKey, VerifyKey>;

  explicit OmsScheme(OmsParams params);

  const OmsParams& params() const noexcept { return params_; }
  const BotUowhf& hash() const noexcept { return hash_; }
  std::size_t message_bits() const noexcept { return params_.msg_bits; }

  /// Sampling decisions come from `coins`; hash evaluation noise from `noise`.
  /// Aborted images are kept in the verification key.
  KeyPair keygen(RandomTape& coins, RandomTape& noise) const;
  KeyPair keygen(RandomTape& tape) const { return keygen(tape, tape); }

  /// Deterministic and never aborts.
  MaybeSignature<Signature> sign(const SigningKey& sk, const Bits& m, RandomTape& tape) const;
  /// Accept iff each recomputed image equals the stored image and neither aborts.
  /// Malformed or aborted signatures are rejected.
  Verdict verify(const VerifyKey& vk, const Bits& m, const MaybeSignature<Signature>& sig,
                 RandomTape& tape) const;

  /// Bits of the canonical bit encoding of a verification key (see encode_vk).
  std::size_t vk_bits() const noexcept;
  /// Per entry: hash key, then one tag bit (1 = image present) and the image
  /// bits (zeros when aborted). Entries ordered by j, then b.
  Bits encode_vk(const VerifyKey& vk) const;

 private:
  OmsParams params_;
  BotUowhf hash_;
};

}  // namespace botsig
