#pragma once

// Parallel repetition of a bit-encryption scheme whose decryption may abort.
// Each bit is encrypted under q independent keys; decryption succeeds only
// when the non-aborting components agree, and then returns the value at the
// smallest non-aborting index.
//
// The base scheme is a classical mock: a keyed SHAKE256 pad over a fresh
// nonce, with decryption aborting at rate delta. Its "public" key is the
// secret pad key itself; only the combinator is of interest here.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "botsig/bits.hpp"
#include "botsig/random_tape.hpp"

namespace botsig {

/// Decrypted bit, or nullopt for abort.
using MaybeBit = std::optional<bool>;

struct PkeKeyPair {
  Bits pk;
  Bits sk;
  friend bool operator==(const PkeKeyPair&, const PkeKeyPair&) = default;
};

struct PkeCiphertext {
  Bits nonce;
  bool masked = false;
  friend bool operator==(const PkeCiphertext&, const PkeCiphertext&) = default;
};

class MockBasePke {
 public:
  MockBasePke(std::size_t key_len, double delta, Bytes master_seed);

  std::size_t key_len() const noexcept { return key_len_; }
  double delta() const noexcept { return delta_; }

  PkeKeyPair keygen(RandomTape& tape) const;
  PkeCiphertext encrypt(const Bits& pk, bool bit, RandomTape& tape) const;
  MaybeBit decrypt(const Bits& sk, const PkeCiphertext& ct, RandomTape& tape) const;

 private:
  bool pad(const Bits& key, const Bits& nonce) const;

  std::size_t key_len_;
  double delta_;
  Bytes master_seed_;
};

std::vector<PkeKeyPair> rep_keygen(const MockBasePke& base, std::size_t q, RandomTape& tape);

std::vector<PkeCiphertext> rep_encrypt(const MockBasePke& base, std::span<const PkeKeyPair> keys,
                                       bool bit, RandomTape& tape);

MaybeBit rep_decrypt(const MockBasePke& base, std::span<const PkeKeyPair> keys,
                     std::span<const PkeCiphertext> cts, RandomTape& tape);

/// Abort if nothing survived or two survivors disagree, else the first survivor.
MaybeBit rep_combine(std::span<const MaybeBit> results);

}  // namespace botsig
