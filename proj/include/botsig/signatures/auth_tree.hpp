#pragma once

// Many-message signatures over an authentication tree of one-message keys.
// Node alpha.v holds a key pair; an inner node signs the encoded
// verification keys of its two children, and the leaf reached by the
// message bits signs the message itself. The stateful signer memoizes keys
// and child signatures; the stateless signer rederives every key pair from
// tree-PRF coins and keeps nothing.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "botsig/signatures/oms2.hpp"
#include "botsig/tree_prf.hpp"

namespace botsig {

/// Path below the root; the root itself is the empty label.
using NodeLabel = Bits;

struct AuthTreeParams {
  Oms2Params ots;
  /// Message length n (even).
  std::size_t msg_bits = 4;

  /// Requires even n, OTS messages of at least twice the vk encoding, and
  /// n no longer than the OTS message length.
  void validate() const;

  friend bool operator==(const AuthTreeParams&, const AuthTreeParams&) = default;
};

/// OTS parameters whose message length is exactly twice the vk encoding.
Oms2Params tree_ots_params(std::size_t lambda, std::size_t hash_key_bits, std::size_t coin_bits,
                           double mu, Bytes master_seed);

using Oms2KeyPair = Oms2Scheme::KeyPair;

struct ChainLink {
  Oms2Signature signature;
  Oms2VerifyKey left;
  Oms2VerifyKey right;
  friend bool operator==(const ChainLink&, const ChainLink&) = default;
};

struct AuthTreeSignature {
  std::vector<ChainLink> links;
  Oms2Signature leaf;
  friend bool operator==(const AuthTreeSignature&, const AuthTreeSignature&) = default;
};

struct NodeEntry {
  std::optional<Oms2KeyPair> keys;
  std::optional<Oms2Signature> child_signature;
  friend bool operator==(const NodeEntry&, const NodeEntry&) = default;
};

using TreeMemory = std::map<NodeLabel, NodeEntry>;

/// Coins for the key pair at a node label; an abort aborts the signature.
using NodeCoinSource = std::function<BotValue(const NodeLabel&)>;

/// Signing and verification logic shared by both tree schemes.
class AuthTree {
 public:
  explicit AuthTree(AuthTreeParams params);

  const AuthTreeParams& params() const noexcept { return params_; }
  const Oms2Scheme& ots() const noexcept { return ots_; }

  /// Walks root -> leaf along m, creating missing key pairs from `coins` and
  /// missing child signatures, recording both in `memory`.
  MaybeSignature<AuthTreeSignature> sign(const Oms2KeyPair& root, TreeMemory& memory,
                                         const Bits& m, const NodeCoinSource& coins,
                                         RandomTape& tape) const;

  Verdict verify(const Oms2VerifyKey& root, const Bits& m,
                 const MaybeSignature<AuthTreeSignature>& sig, RandomTape& tape) const;

  /// OTS message for an inner node: encode(left) || encode(right).
  Bits children_message(const Oms2VerifyKey& left, const Oms2VerifyKey& right) const;
  /// Leaf message: m zero-padded to the OTS message length.
  Bits leaf_message(const Bits& m) const;

 private:
  AuthTreeParams params_;
  Oms2Scheme ots_;
};

struct StatefulSigningKey {
  Oms2KeyPair root;
  TreeMemory memory;
  friend bool operator==(const StatefulSigningKey&, const StatefulSigningKey&) = default;
};

class StatefulScheme {
 public:
  using SigningKey = StatefulSigningKey;
  using VerifyKey = Oms2VerifyKey;
  using Signature = AuthTreeSignature;
  using KeyPair = BasicKeyPair<SigningKey, VerifyKey>;

  explicit StatefulScheme(AuthTreeParams params) : tree_(std::move(params)) {}

  const AuthTree& tree() const noexcept { return tree_; }
  std::size_t message_bits() const noexcept { return tree_.params().msg_bits; }

  KeyPair keygen(RandomTape& tape) const;
  /// New node key pairs draw fresh coins from `tape`.
  MaybeSignature<Signature> sign(SigningKey& sk, const Bits& m, RandomTape& tape) const;
  MaybeSignature<Signature> sign(SigningKey& sk, const Bits& m, const NodeCoinSource& coins,
                                 RandomTape& tape) const;
  Verdict verify(const VerifyKey& vk, const Bits& m, const MaybeSignature<Signature>& sig,
                 RandomTape& tape) const;

 private:
  AuthTree tree_;
};

struct StatelessParams {
  AuthTreeParams tree;
  /// PRG behind the per-level tree PRFs; its composite key length must equal
  /// the OTS coin length and its output must double it.
  BotPrgSpec prf_prg;

  void validate() const;

  friend bool operator==(const StatelessParams&, const StatelessParams&) = default;
};

struct StatelessSigningKey {
  Oms2KeyPair root;
  /// prf_keys[i-1] keys the level-i PRF.
  std::vector<Bits> prf_keys;
  /// masks[i-1][tau] has i + q bits.
  std::vector<std::array<Bits, 2>> masks;
  friend bool operator==(const StatelessSigningKey&, const StatelessSigningKey&) = default;
};

class StatelessScheme {
 public:
  using SigningKey = StatelessSigningKey;
  using VerifyKey = Oms2VerifyKey;
  using Signature = AuthTreeSignature;
  using KeyPair = BasicKeyPair<SigningKey, VerifyKey>;

  explicit StatelessScheme(StatelessParams params);

  const StatelessParams& params() const noexcept { return params_; }
  const AuthTree& tree() const noexcept { return tree_; }
  const TreePrf& level_prf(std::size_t level) const { return prfs_.at(level - 1); }
  std::size_t message_bits() const noexcept { return params_.tree.msg_bits; }

  KeyPair keygen(RandomTape& tape) const;
  MaybeSignature<Signature> sign(const SigningKey& sk, const Bits& m, RandomTape& tape) const;
  Verdict verify(const VerifyKey& vk, const Bits& m, const MaybeSignature<Signature>& sig,
                 RandomTape& tape) const;

  /// Coins for node `label` (length i >= 1): PRF^i(k_i, (prefix || tau || 0^q) xor r_{i,tau}).
  BotValue node_coins(const SigningKey& sk, const NodeLabel& label, RandomTape& tape) const;

 private:
  StatelessParams params_;
  AuthTree tree_;
  std::vector<TreePrf> prfs_;
};

}  // namespace botsig
