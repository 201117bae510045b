#include "botsig/signatures/auth_tree.hpp"

#include "botsig/errors.hpp"

namespace botsig {

void AuthTreeParams::validate() const {
  ots.validate();
  if (msg_bits == 0 || msg_bits % 2 != 0) {
    throw PreconditionViolated("tree signatures need an even, positive message length");
  }
  const OmsScheme probe(ots.inner());
  if (ots.msg_bits < 2 * probe.vk_bits()) {
    throw PreconditionViolated("OTS messages must hold two encoded verification keys");
  }
  if (msg_bits > ots.msg_bits) throw PreconditionViolated("message longer than OTS capacity");
}

Oms2Params tree_ots_params(std::size_t lambda, std::size_t hash_key_bits, std::size_t coin_bits,
                           double mu, Bytes master_seed) {
  Oms2Params p;
  p.lambda = lambda;
  p.hash_key_bits = hash_key_bits;
  p.coin_bits = coin_bits;
  p.mu = mu;
  p.master_seed = std::move(master_seed);
  p.msg_bits = 2 * OmsScheme(p.inner()).vk_bits();
  return p;
}

AuthTree::AuthTree(AuthTreeParams params)
    : params_((params.validate(), std::move(params))), ots_(params_.ots) {}

Bits AuthTree::children_message(const Oms2VerifyKey& left, const Oms2VerifyKey& right) const {
  Bits msg = ots_.encode_vk(left);
  msg.append(ots_.encode_vk(right));
  msg.append(Bits(params_.ots.msg_bits - msg.size()));
  return msg;
}

Bits AuthTree::leaf_message(const Bits& m) const {
  if (m.size() != params_.msg_bits) throw InvalidLength("tree message length mismatch");
  return m.concat(Bits(params_.ots.msg_bits - m.size()));
}

MaybeSignature<AuthTreeSignature> AuthTree::sign(const Oms2KeyPair& root, TreeMemory& memory,
                                                 const Bits& m, const NodeCoinSource& coins,
                                                 RandomTape& tape) const {
  if (m.size() != params_.msg_bits) throw InvalidLength("tree message length mismatch");
  AuthTreeSignature out;
  out.links.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const NodeLabel prefix = m.slice(0, i);
    std::array<const Oms2KeyPair*, 2> children{};
    for (int tau = 0; tau < 2; ++tau) {
      NodeLabel label = prefix;
      label.push_back(tau == 1);
      NodeEntry& node = memory[label];
      if (!node.keys) {
        const BotValue c = coins(label);
        if (c.is_bot()) return std::nullopt;
        node.keys = ots_.keygen_from_coins(c.bits(), tape);
      }
      children[tau] = &*node.keys;
    }
    NodeEntry& parent = memory[prefix];
    if (!parent.child_signature) {
      const Oms2KeyPair& signer = prefix.empty() ? root : *parent.keys;
      auto sig = ots_.sign(signer.sk, children_message(children[0]->vk, children[1]->vk), tape);
      if (!sig) return std::nullopt;
      parent.child_signature = std::move(*sig);
    }
    out.links.push_back(ChainLink{*parent.child_signature, children[0]->vk, children[1]->vk});
  }
  auto leaf = ots_.sign(memory.at(m).keys->sk, leaf_message(m), tape);
  if (!leaf) return std::nullopt;
  out.leaf = std::move(*leaf);
  return out;
}

Verdict AuthTree::verify(const Oms2VerifyKey& root, const Bits& m,
                         const MaybeSignature<AuthTreeSignature>& sig, RandomTape& tape) const {
  if (!sig) return Verdict::Abort;
  if (m.size() != params_.msg_bits || sig->links.size() != m.size()) return Verdict::Reject;
  const Oms2VerifyKey* signer = &root;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const ChainLink& link = sig->links[i];
    Bits msg;
    try {
      msg = children_message(link.left, link.right);
    } catch (const InvalidLength&) {
      return Verdict::Reject;
    }
    if (ots_.verify(*signer, msg, link.signature, tape) != Verdict::Accept) return Verdict::Reject;
    signer = m[i] ? &link.right : &link.left;
  }
  if (ots_.verify(*signer, leaf_message(m), sig->leaf, tape) != Verdict::Accept) {
    return Verdict::Reject;
  }
  return Verdict::Accept;
}

StatefulScheme::KeyPair StatefulScheme::keygen(RandomTape& tape) const {
  KeyPair kp;
  kp.sk.root = tree_.ots().keygen(tape);
  kp.vk = kp.sk.root.vk;
  return kp;
}

MaybeSignature<AuthTreeSignature> StatefulScheme::sign(SigningKey& sk, const Bits& m,
                                                       RandomTape& tape) const {
  const std::size_t coin_bits = tree_.ots().coin_bits();
  const NodeCoinSource fresh = [&](const NodeLabel&) { return BotValue(tape.bits(coin_bits)); };
  return sign(sk, m, fresh, tape);
}

MaybeSignature<AuthTreeSignature> StatefulScheme::sign(SigningKey& sk, const Bits& m,
                                                       const NodeCoinSource& coins,
                                                       RandomTape& tape) const {
  return tree_.sign(sk.root, sk.memory, m, coins, tape);
}

Verdict StatefulScheme::verify(const VerifyKey& vk, const Bits& m,
                               const MaybeSignature<Signature>& sig, RandomTape& tape) const {
  return tree_.verify(vk, m, sig, tape);
}

void StatelessParams::validate() const {
  tree.validate();
  prf_prg.validate();
  if (prf_prg.composite_key_len() != tree.ots.coin_bits) {
    throw PreconditionViolated("PRF output length must equal the OTS coin length");
  }
  if (prf_prg.out_len() != 2 * prf_prg.composite_key_len()) {
    throw PreconditionViolated("PRF generator must double its key");
  }
}

StatelessScheme::StatelessScheme(StatelessParams params)
    : params_((params.validate(), std::move(params))), tree_(params_.tree) {
  const std::size_t q = params_.tree.ots.coin_bits;
  prfs_.reserve(params_.tree.msg_bits);
  for (std::size_t i = 1; i <= params_.tree.msg_bits; ++i) {
    prfs_.emplace_back(TreePrfSpec{params_.prf_prg, i + q});
  }
}

StatelessScheme::KeyPair StatelessScheme::keygen(RandomTape& tape) const {
  const std::size_t q = params_.tree.ots.coin_bits;
  KeyPair kp;
  kp.sk.root = tree_.ots().keygen(tape);
  for (std::size_t i = 1; i <= params_.tree.msg_bits; ++i) {
    kp.sk.prf_keys.push_back(tape.bits(params_.prf_prg.composite_key_len()));
    kp.sk.masks.push_back({tape.bits(i + q), tape.bits(i + q)});
  }
  kp.vk = kp.sk.root.vk;
  return kp;
}

BotValue StatelessScheme::node_coins(const SigningKey& sk, const NodeLabel& label,
                                     RandomTape& tape) const {
  const std::size_t i = label.size();
  if (i == 0 || i > params_.tree.msg_bits) throw InvalidLength("node label depth out of range");
  if (sk.prf_keys.size() != params_.tree.msg_bits || sk.masks.size() != params_.tree.msg_bits) {
    throw InvalidLength("stateless signing key shape mismatch");
  }
  const bool tau = label[i - 1];
  Bits input = label.concat(Bits(params_.tree.ots.coin_bits));
  input ^= sk.masks[i - 1][tau ? 1 : 0];
  return prfs_[i - 1].eval(sk.prf_keys[i - 1], input, tape);
}

MaybeSignature<AuthTreeSignature> StatelessScheme::sign(const SigningKey& sk, const Bits& m,
                                                        RandomTape& tape) const {
  TreeMemory scratch;
  const NodeCoinSource coins = [&](const NodeLabel& label) { return node_coins(sk, label, tape); };
  return tree_.sign(sk.root, scratch, m, coins, tape);
}

Verdict StatelessScheme::verify(const VerifyKey& vk, const Bits& m,
                                const MaybeSignature<Signature>& sig, RandomTape& tape) const {
  return tree_.verify(vk, m, sig, tape);
}

}  // namespace botsig
