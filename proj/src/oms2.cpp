#include "botsig/signatures/oms2.hpp"

#include "botsig/errors.hpp"

namespace botsig {

void Oms2Params::validate() const {
  if (lambda == 0 || hash_key_bits == 0 || coin_bits == 0) {
    throw PreconditionViolated("OMS2 lengths must be positive");
  }
  if (2 * (hash_key_bits + lambda) >= msg_bits) {
    throw PreconditionViolated("OMS2 requires l + lambda < q / 2");
  }
  if (!(mu >= 0.0 && mu <= 1.0)) throw PreconditionViolated("OMS2 mu must lie in [0, 1]");
}

OmsParams Oms2Params::inner() const {
  return OmsParams{BotUowhfSpec{hash_key_bits, 2 * lambda, lambda, mu, master_seed},
                   hash_key_bits + lambda};
}

BotUowhfSpec Oms2Params::message_hash() const {
  return BotUowhfSpec{hash_key_bits, msg_bits, lambda, mu, master_seed};
}

void to_json(nlohmann::json& j, const Oms2Params& p) {
  j = nlohmann::json{{"lambda", p.lambda},         {"hash_key_bits", p.hash_key_bits},
                     {"msg_bits", p.msg_bits},     {"coin_bits", p.coin_bits},
                     {"mu", p.mu},                 {"master_seed_hex", to_hex(p.master_seed)}};
}

void from_json(const nlohmann::json& j, Oms2Params& p) {
  j.at("lambda").get_to(p.lambda);
  j.at("hash_key_bits").get_to(p.hash_key_bits);
  j.at("msg_bits").get_to(p.msg_bits);
  j.at("coin_bits").get_to(p.coin_bits);
  j.at("mu").get_to(p.mu);
  p.master_seed = bytes_from_hex(j.at("master_seed_hex").get<std::string>());
}

Oms2Scheme::Oms2Scheme(Oms2Params params)
    : params_((params.validate(), std::move(params))),
      inner_(params_.inner()),
      message_hash_(params_.message_hash()) {}

Oms2Scheme::KeyPair Oms2Scheme::keygen_from_coins(const Bits& coins, RandomTape& noise) const {
  if (coins.size() != params_.coin_bits) throw InvalidLength("OMS2 coin string length mismatch");
  RandomTape expanded = RandomTape::from_bits(coins);
  auto inner = inner_.keygen(expanded, noise);
  KeyPair kp;
  kp.sk.inner = std::move(inner.sk);
  kp.sk.hash_key = expanded.bits(params_.hash_key_bits);
  kp.vk = std::move(inner.vk);
  return kp;
}

Oms2Scheme::KeyPair Oms2Scheme::keygen(RandomTape& tape) const {
  const Bits coins = tape.bits(params_.coin_bits);
  return keygen_from_coins(coins, tape);
}

MaybeSignature<Oms2Signature> Oms2Scheme::sign(const SigningKey& sk, const Bits& m,
                                               RandomTape& tape) const {
  if (m.size() != params_.msg_bits) throw InvalidLength("OMS2 message length mismatch");
  const BotValue digest = message_hash_.eval(sk.hash_key, m, tape);
  if (digest.is_bot()) return std::nullopt;
  auto inner_sig = inner_.sign(sk.inner, sk.hash_key.concat(digest.bits()), tape);
  return Oms2Signature{sk.hash_key, std::move(*inner_sig)};
}

Verdict Oms2Scheme::verify(const VerifyKey& vk, const Bits& m,
                           const MaybeSignature<Signature>& sig, RandomTape& tape) const {
  if (!sig) return Verdict::Abort;
  if (m.size() != params_.msg_bits || sig->hash_key.size() != params_.hash_key_bits) {
    return Verdict::Reject;
  }
  const BotValue digest = message_hash_.eval(sig->hash_key, m, tape);
  if (digest.is_bot()) return Verdict::Abort;
  return inner_.verify(vk, sig->hash_key.concat(digest.bits()), sig->inner, tape);
}

}  // namespace botsig
