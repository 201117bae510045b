#include "botsig/harness/estimators.hpp"

#include <algorithm>
#include <map>

#include "botsig/errors.hpp"

namespace botsig {

ExperimentReport estimate_bot_rate(const Evaluator& eval, const KeySource& keys,
                                   std::size_t trials, RandomTape& tape, const RunOptions& opts,
                                   std::optional<double> bound) {
  if (trials == 0) throw PreconditionViolated("estimate_bot_rate needs at least one trial");
  const auto aborted =
      run_trials<std::uint8_t>(trials, tape, opts.jobs, [&](std::size_t, RandomTape& t) {
        const Bits key = keys(t);
        return static_cast<std::uint8_t>(eval(key, t).is_bot());
      });
  return proportion_report("bot_rate", count_true(aborted), trials, opts.z, bound,
                           bound ? BoundKind::AtMost : BoundKind::None);
}

ExperimentReport check_pseudodeterminism(const Evaluator& eval, std::span<const Bits> keys,
                                         std::size_t reps_per_key, RandomTape& tape,
                                         double tolerance, const RunOptions& opts) {
  if (reps_per_key < 2) throw PreconditionViolated("pseudodeterminism needs at least 2 repetitions");
  if (keys.empty()) throw EmptyInput("pseudodeterminism check over zero keys");
  struct PerKey {
    std::uint64_t violations = 0;
    std::uint64_t aborts = 0;
  };
  const auto per_key = run_trials<PerKey>(keys.size(), tape, opts.jobs, [&](std::size_t k, RandomTape& t) {
    std::map<Bits, std::uint64_t> counts;
    PerKey out;
    for (std::size_t r = 0; r < reps_per_key; ++r) {
      const BotValue v = eval(keys[k], t);
      if (v.is_bot()) {
        ++out.aborts;
      } else {
        ++counts[v.bits()];
      }
    }
    std::uint64_t modal = 0;
    std::uint64_t total = 0;
    for (const auto& [value, c] : counts) {
      modal = std::max(modal, c);
      total += c;
    }
    out.violations = total - modal;
    return out;
  });
  std::uint64_t violations = 0;
  std::uint64_t aborts = 0;
  double worst = 0.0;
  for (const auto& pk : per_key) {
    violations += pk.violations;
    aborts += pk.aborts;
    worst = std::max(worst, static_cast<double>(pk.violations) / static_cast<double>(reps_per_key));
  }
  const std::uint64_t evals = keys.size() * reps_per_key;
  ExperimentReport r = proportion_report("pseudodeterminism", violations, evals, opts.z);
  r.rate = worst;
  r.analytic_bound = tolerance;
  r.bound_kind = BoundKind::AtMost;
  r.verdict = worst <= tolerance ? ReportVerdict::Pass : ReportVerdict::Fail;
  r.details["keys"] = keys.size();
  r.details["reps_per_key"] = reps_per_key;
  r.details["abort_count"] = aborts;
  r.details["mean_violation"] = static_cast<double>(violations) / static_cast<double>(evals);
  return r;
}

}  // namespace botsig
