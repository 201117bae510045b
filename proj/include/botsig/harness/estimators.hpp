#pragma once

#include <functional>
#include <span>

#include "botsig/bot_hash.hpp"
#include "botsig/harness/parallel.hpp"
#include "botsig/harness/report.hpp"
#include "botsig/signatures/scheme.hpp"

namespace botsig {

struct RunOptions {
  unsigned jobs = 1;
  double z = kDefaultZ;
};

/// Produces the key (or input) for one trial.
using KeySource = std::function<Bits(RandomTape&)>;

/// Abort frequency of `eval` on fresh keys. Compared against `bound` from
/// above when one is given.
ExperimentReport estimate_bot_rate(const Evaluator& eval, const KeySource& keys,
                                   std::size_t trials, RandomTape& tape,
                                   const RunOptions& opts = {},
                                   std::optional<double> bound = std::nullopt);

/// Per key, finds the most frequent non-abort value and counts evaluations
/// that are neither that value nor an abort. rate is the largest per-key
/// violation fraction; successes counts all violations. Passes when the
/// largest fraction is at most `tolerance`.
ExperimentReport check_pseudodeterminism(const Evaluator& eval, std::span<const Bits> keys,
                                         std::size_t reps_per_key, RandomTape& tape,
                                         double tolerance = 0.0, const RunOptions& opts = {});

/// Sign/verify success rate over fresh key pairs and uniform messages,
/// compared against `bound` from below.
template <SignatureScheme S>
ExperimentReport estimate_correctness(const S& scheme, std::size_t trials, RandomTape& tape,
                                      const RunOptions& opts = {},
                                      std::optional<double> bound = std::nullopt,
                                      std::string name = "correctness") {
  const auto ok = run_trials<std::uint8_t>(trials, tape, opts.jobs, [&](std::size_t, RandomTape& t) {
    auto kp = scheme.keygen(t);
    const Bits m = t.bits(scheme.message_bits());
    const auto sig = scheme.sign(kp.sk, m, t);
    return static_cast<std::uint8_t>(scheme.verify(kp.vk, m, sig, t) == Verdict::Accept);
  });
  return proportion_report(std::move(name), count_true(ok), trials, opts.z, bound,
                           bound ? BoundKind::AtLeast : BoundKind::None);
}

}  // namespace botsig
