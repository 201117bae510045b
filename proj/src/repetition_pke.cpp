#include "botsig/repetition_pke.hpp"

#include "botsig/errors.hpp"
#include "botsig/xof.hpp"

namespace botsig {

MockBasePke::MockBasePke(std::size_t key_len, double delta, Bytes master_seed)
    : key_len_(key_len), delta_(delta), master_seed_(std::move(master_seed)) {
  if (key_len == 0) throw PreconditionViolated("mock PKE key length must be positive");
  if (!(delta >= 0.0 && delta < 1.0)) throw PreconditionViolated("mock PKE delta must lie in [0, 1)");
}

bool MockBasePke::pad(const Bits& key, const Bits& nonce) const {
  Shake256 h("botsig/mock-pke");
  h.absorb(master_seed_).absorb(key).absorb(nonce);
  return (h.squeeze(1)[0] & 0x80) != 0;
}

PkeKeyPair MockBasePke::keygen(RandomTape& tape) const {
  Bits k = tape.bits(key_len_);
  return PkeKeyPair{k, k};
}

PkeCiphertext MockBasePke::encrypt(const Bits& pk, bool bit, RandomTape& tape) const {
  if (pk.size() != key_len_) throw InvalidLength("mock PKE key length mismatch");
  PkeCiphertext ct{tape.bits(key_len_), false};
  ct.masked = bit != pad(pk, ct.nonce);
  return ct;
}

MaybeBit MockBasePke::decrypt(const Bits& sk, const PkeCiphertext& ct, RandomTape& tape) const {
  if (sk.size() != key_len_ || ct.nonce.size() != key_len_) {
    throw InvalidLength("mock PKE key or nonce length mismatch");
  }
  if (tape.bernoulli(delta_)) return std::nullopt;
  return ct.masked != pad(sk, ct.nonce);
}

std::vector<PkeKeyPair> rep_keygen(const MockBasePke& base, std::size_t q, RandomTape& tape) {
  if (q == 0) throw PreconditionViolated("repetition count must be at least 1");
  std::vector<PkeKeyPair> keys;
  keys.reserve(q);
  for (std::size_t i = 0; i < q; ++i) keys.push_back(base.keygen(tape));
  return keys;
}

std::vector<PkeCiphertext> rep_encrypt(const MockBasePke& base, std::span<const PkeKeyPair> keys,
                                       bool bit, RandomTape& tape) {
  if (keys.empty()) throw PreconditionViolated("repetition count must be at least 1");
  std::vector<PkeCiphertext> cts;
  cts.reserve(keys.size());
  for (const auto& kp : keys) cts.push_back(base.encrypt(kp.pk, bit, tape));
  return cts;
}

MaybeBit rep_decrypt(const MockBasePke& base, std::span<const PkeKeyPair> keys,
                     std::span<const PkeCiphertext> cts, RandomTape& tape) {
  if (keys.size() != cts.size()) throw InvalidLength("ciphertext count differs from key count");
  std::vector<MaybeBit> results;
  results.reserve(cts.size());
  for (std::size_t i = 0; i < cts.size(); ++i) results.push_back(base.decrypt(keys[i].sk, cts[i], tape));
  return rep_combine(results);
}

MaybeBit rep_combine(std::span<const MaybeBit> results) {
  MaybeBit first;
  for (const auto& r : results) {
    if (!r) continue;
    if (!first) {
      first = r;
    } else if (*first != *r) {
      return std::nullopt;
    }
  }
  return first;
}

}  // namespace botsig
