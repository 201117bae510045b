#pragma once

// Hash-then-sign one-message signatures: the message is compressed under a
// fresh UOWHF key k and the inner length-restricted scheme signs k || H(k, m).

#include "botsig/signatures/oms.hpp"

namespace botsig {

struct Oms2Params {
  std::size_t lambda = 16;
  /// UOWHF key length (l).
  std::size_t hash_key_bits = 16;
  /// Message length q; must satisfy l + lambda < q / 2.
  std::size_t msg_bits = 128;
  /// Length of the coin string keygen consumes.
  std::size_t coin_bits = 64;
  double mu = 0.0;
  Bytes master_seed;

  void validate() const;
  OmsParams inner() const;
  BotUowhfSpec message_hash() const;

  friend bool operator==(const Oms2Params&, const Oms2Params&) = default;
};

void to_json(nlohmann::json& j, const Oms2Params& p);
void from_json(const nlohmann::json& j, Oms2Params& p);

struct Oms2SecretKey {
  OmsSecretKey inner;
  Bits hash_key;
  friend bool operator==(const Oms2SecretKey&, const Oms2SecretKey&) = default;
};

using Oms2VerifyKey = OmsVerifyKey;

struct Oms2Signature {
  Bits hash_key;
  OmsSignature inner;
  friend bool operator==(const Oms2Signature&, const Oms2Signature&) = default;
};

class Oms2Scheme {
 public:
  using SigningKey = Oms2SecretKey;
  using VerifyKey = Oms2VerifyKey;
  using Signature = Oms2Signature;
  using KeyPair = BasicKeyPair<SigningKey, VerifyKey>;

  explicit Oms2Scheme(Oms2Params params);

  const Oms2Params& params() const noexcept { return params_; }
  const OmsScheme& inner() const noexcept { return inner_; }
  std::size_t message_bits() const noexcept { return params_.msg_bits; }
  std::size_t coin_bits() const noexcept { return params_.coin_bits; }

  /// Keygen with its sampling decisions fixed by `coins` (coin_bits() long).
  KeyPair keygen_from_coins(const Bits& coins, RandomTape& noise) const;
  KeyPair keygen(RandomTape& tape) const;

  /// Aborts when the message hash aborts.
  MaybeSignature<Signature> sign(const SigningKey& sk, const Bits& m, RandomTape& tape) const;
  /// Abort on an aborted signature or aborted message hash, else the inner verdict.
  Verdict verify(const VerifyKey& vk, const Bits& m, const MaybeSignature<Signature>& sig,
                 RandomTape& tape) const;

  std::size_t vk_bits() const noexcept { return inner_.vk_bits(); }
  Bits encode_vk(const VerifyKey& vk) const { return inner_.encode_vk(vk); }

 private:
  Oms2Params params_;
  OmsScheme inner_;
  BotUowhf message_hash_;
};

}  // namespace botsig
