#pragma once

// Correctness amplifiers over any SignatureScheme.
//
// AmplifiedSuf keeps 3p independent base key pairs and publishes the first
// non-aborting base signature together with its index. AmplifiedUf signs
// under every one of `reps` keys and accepts when any component verifies;
// it gives statistical correctness but not strong unforgeability.

#include <utility>
#include <vector>

#include "botsig/errors.hpp"
#include "botsig/signatures/scheme.hpp"

namespace botsig {

template <class Sig>
struct IndexedSignature {
  using InnerType = Sig;
  /// Zero-based position of the first non-aborting base signature.
  std::size_t index = 0;
  Sig inner;
  friend bool operator==(const IndexedSignature&, const IndexedSignature&) = default;
};

template <SignatureScheme Base>
class AmplifiedSuf {
 public:
  using SigningKey = std::vector<typename Base::SigningKey>;
  using VerifyKey = std::vector<typename Base::VerifyKey>;
  using Signature = IndexedSignature<typename Base::Signature>;
  using KeyPair = BasicKeyPair<SigningKey, VerifyKey>;

  /// `p` is the inverse of the base scheme's correctness; 3p copies are kept.
  AmplifiedSuf(Base base, std::size_t p) : base_(std::move(base)), copies_(3 * p) {
    if (p == 0) throw PreconditionViolated("amplifier needs p >= 1");
  }

  const Base& base() const noexcept { return base_; }
  std::size_t copies() const noexcept { return copies_; }
  std::size_t message_bits() const { return base_.message_bits(); }

  KeyPair keygen(RandomTape& tape) const {
    KeyPair kp;
    kp.sk.reserve(copies_);
    kp.vk.reserve(copies_);
    for (std::size_t i = 0; i < copies_; ++i) {
      auto part = base_.keygen(tape);
      kp.sk.push_back(std::move(part.sk));
      kp.vk.push_back(std::move(part.vk));
    }
    return kp;
  }

  /// Runs every base signer, then keeps the first non-abort in index order.
  MaybeSignature<Signature> sign(SigningKey& sk, const Bits& m, RandomTape& tape) const {
    if (sk.size() != copies_) throw InvalidLength("amplified signing key arity mismatch");
    MaybeSignature<Signature> first;
    for (std::size_t i = 0; i < copies_; ++i) {
      auto sig = base_.sign(sk[i], m, tape);
      if (sig && !first) first = Signature{i, std::move(*sig)};
    }
    return first;
  }

  Verdict verify(const VerifyKey& vk, const Bits& m, const MaybeSignature<Signature>& sig,
                 RandomTape& tape) const {
    if (!sig) return Verdict::Abort;
    if (vk.size() != copies_ || sig->index >= vk.size()) return Verdict::Reject;
    return base_.verify(vk[sig->index], m, MaybeSignature<typename Base::Signature>(sig->inner),
                        tape);
  }

 private:
  Base base_;
  std::size_t copies_;
};

template <SignatureScheme Base>
class AmplifiedUf {
 public:
  using SigningKey = std::vector<typename Base::SigningKey>;
  using VerifyKey = std::vector<typename Base::VerifyKey>;
  using Signature = std::vector<MaybeSignature<typename Base::Signature>>;
  using KeyPair = BasicKeyPair<SigningKey, VerifyKey>;

  AmplifiedUf(Base base, std::size_t reps) : base_(std::move(base)), reps_(reps) {
    if (reps == 0) throw PreconditionViolated("amplifier needs at least one repetition");
  }

  const Base& base() const noexcept { return base_; }
  std::size_t reps() const noexcept { return reps_; }
  std::size_t message_bits() const { return base_.message_bits(); }

  KeyPair keygen(RandomTape& tape) const {
    KeyPair kp;
    for (std::size_t i = 0; i < reps_; ++i) {
      auto part = base_.keygen(tape);
      kp.sk.push_back(std::move(part.sk));
      kp.vk.push_back(std::move(part.vk));
    }
    return kp;
  }

  /// The vector of all base signatures; never aborts as a whole.
  MaybeSignature<Signature> sign(SigningKey& sk, const Bits& m, RandomTape& tape) const {
    if (sk.size() != reps_) throw InvalidLength("amplified signing key arity mismatch");
    Signature out;
    out.reserve(reps_);
    for (std::size_t i = 0; i < reps_; ++i) out.push_back(base_.sign(sk[i], m, tape));
    return out;
  }

  /// Accept iff some component verifies under its own key.
  Verdict verify(const VerifyKey& vk, const Bits& m, const MaybeSignature<Signature>& sig,
                 RandomTape& tape) const {
    if (!sig) return Verdict::Abort;
    if (vk.size() != reps_ || sig->size() != reps_) return Verdict::Reject;
    for (std::size_t i = 0; i < reps_; ++i) {
      if ((*sig)[i] && base_.verify(vk[i], m, (*sig)[i], tape) == Verdict::Accept) {
        return Verdict::Accept;
      }
    }
    return Verdict::Reject;
  }

 private:
  Base base_;
  std::size_t reps_;
};

}  // namespace botsig
