#pragma once

// Unforgeability experiments with pluggable adversaries. The adversary gets
// the verification key and a signing oracle, and returns a forgery. OM-SUF
// additionally requires every oracle query to be on one message.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "botsig/errors.hpp"
#include "botsig/harness/estimators.hpp"

namespace botsig {

enum class GameOutcome { Win, Lose };

template <SignatureScheme S>
struct QueryRecord {
  Bits message;
  MaybeSignature<typename S::Signature> signature;
};

template <SignatureScheme S>
using QueryLog = std::vector<QueryRecord<S>>;

template <SignatureScheme S>
class SigningOracle {
 public:
  SigningOracle(const S& scheme, typename S::SigningKey& sk, RandomTape& tape)
      : scheme_(scheme), sk_(sk), tape_(tape) {}

  MaybeSignature<typename S::Signature> sign(const Bits& m) {
    auto sig = scheme_.sign(sk_, m, tape_);
    log_.push_back({m, sig});
    return sig;
  }

  const QueryLog<S>& log() const noexcept { return log_; }

  /// White-box access for the positive-control adversary only.
  typename S::SigningKey& leak_signing_key() noexcept { return sk_; }

 private:
  const S& scheme_;
  typename S::SigningKey& sk_;
  RandomTape& tape_;
  QueryLog<S> log_;
};

template <SignatureScheme S>
struct Forgery {
  Bits message;
  MaybeSignature<typename S::Signature> signature;
};

template <SignatureScheme S>
struct Adversary {
  std::string name;
  std::function<std::optional<Forgery<S>>(const S&, const typename S::VerifyKey&,
                                          SigningOracle<S>&, RandomTape&)>
      attack;
};

namespace adversaries {

/// Queries one uniform message and returns the oracle's answer verbatim.
template <SignatureScheme S>
Adversary<S> replayer() {
  return {"replayer", [](const S& s, const typename S::VerifyKey&, SigningOracle<S>& o, RandomTape& t) {
            const Bits m = t.bits(s.message_bits());
            return std::optional<Forgery<S>>(Forgery<S>{m, o.sign(m)});
          }};
}

/// Ignores the oracle; signs a uniform message under a key pair of its own.
template <SignatureScheme S>
Adversary<S> random_forger() {
  return {"random_forger", [](const S& s, const typename S::VerifyKey&, SigningOracle<S>&, RandomTape& t) {
            auto own = s.keygen(t);
            const Bits m = t.bits(s.message_bits());
            return std::optional<Forgery<S>>(Forgery<S>{m, s.sign(own.sk, m, t)});
          }};
}

/// Signs an unqueried message with the leaked signing key.
template <SignatureScheme S>
Adversary<S> sk_leak() {
  return {"sk_leak", [](const S& s, const typename S::VerifyKey&, SigningOracle<S>& o, RandomTape& t) {
            const Bits m = t.bits(s.message_bits());
            return std::optional<Forgery<S>>(Forgery<S>{m, s.sign(o.leak_signing_key(), m, t)});
          }};
}

}  // namespace adversaries

namespace forgery_detail {

template <SignatureScheme S>
GameOutcome run(const S& scheme, const Adversary<S>& adv, RandomTape& tape, bool one_message) {
  auto kp = scheme.keygen(tape);
  SigningOracle<S> oracle(scheme, kp.sk, tape);
  std::optional<Forgery<S>> forgery;
  try {
    forgery = adv.attack(scheme, kp.vk, oracle, tape);
  } catch (const Error&) {
    return GameOutcome::Lose;
  }
  if (!forgery || forgery->message.size() != scheme.message_bits()) return GameOutcome::Lose;
  const auto& log = oracle.log();
  if (one_message) {
    for (const auto& q : log) {
      if (q.message != log.front().message) return GameOutcome::Lose;
    }
  }
  const bool replayed = std::any_of(log.begin(), log.end(), [&](const QueryRecord<S>& q) {
    return q.message == forgery->message && q.signature == forgery->signature;
  });
  if (replayed) return GameOutcome::Lose;
  return scheme.verify(kp.vk, forgery->message, forgery->signature, tape) == Verdict::Accept
             ? GameOutcome::Win
             : GameOutcome::Lose;
}

}  // namespace forgery_detail

/// Win iff all queries share one message, the forgery is not a logged
/// pair, and it verifies. Protocol violations lose.
template <SignatureScheme S>
GameOutcome om_suf_experiment(const S& scheme, const Adversary<S>& adv, RandomTape& tape) {
  return forgery_detail::run(scheme, adv, tape, true);
}

template <SignatureScheme S>
GameOutcome suf_experiment(const S& scheme, const Adversary<S>& adv, RandomTape& tape) {
  return forgery_detail::run(scheme, adv, tape, false);
}

/// Win rate over independent runs; `one_message` selects OM-SUF.
template <SignatureScheme S>
ExperimentReport forgery_report(const S& scheme, const Adversary<S>& adv, std::size_t trials,
                                RandomTape& tape, bool one_message, const RunOptions& opts = {}) {
  const auto wins = run_trials<std::uint8_t>(trials, tape, opts.jobs, [&](std::size_t, RandomTape& t) {
    return static_cast<std::uint8_t>(forgery_detail::run(scheme, adv, t, one_message) == GameOutcome::Win);
  });
  return proportion_report(std::string(one_message ? "omsuf/" : "suf/") + adv.name,
                           count_true(wins), trials, opts.z);
}

}  // namespace botsig
