#include "botsig/bot_prg.hpp"

#include "botsig/errors.hpp"

namespace botsig {

void BotPrgSpec::validate() const {
  base.validate();
  if (vote_reps == 0) throw PreconditionViolated("vote_reps must be at least 1");
  if (fanin == 0) throw PreconditionViolated("fanin must be at least 1");
  if (strict_stretch && base.out_len <= composite_key_len()) {
    throw PreconditionViolated("strict stretch: output must exceed the composite key length");
  }
}

void to_json(nlohmann::json& j, const BotPrgSpec& spec) {
  j = nlohmann::json{{"base", spec.base},
                     {"vote_reps", spec.vote_reps},
                     {"fanin", spec.fanin},
                     {"strict_stretch", spec.strict_stretch}};
}

void from_json(const nlohmann::json& j, BotPrgSpec& spec) {
  j.at("base").get_to(spec.base);
  j.at("vote_reps").get_to(spec.vote_reps);
  j.at("fanin").get_to(spec.fanin);
  spec.strict_stretch = j.value("strict_stretch", false);
}

BotPrg::BotPrg(BotPrgSpec spec) : spec_(std::move(spec)), base_(spec_.base) { spec_.validate(); }

BotValue BotPrg::vote_eval(const Bits& key, RandomTape& tape) const {
  // The base support per key has two points, so tallying branch indices is
  // the same as voting over the materialized samples.
  auto profile = base_.profile(key);
  std::size_t tally[2] = {0, 0};
  for (std::size_t i = 0; i < spec_.vote_reps; ++i) ++tally[base_.sample_branch(profile, tape)];
  const std::size_t need = vote_threshold(spec_.vote_reps);
  for (std::size_t b = 0; b < 2; ++b) {
    if (tally[b] >= need) return BotValue(std::move(profile.support[b]));
  }
  return BotValue::bot();
}

void BotPrg::check_composite(const Bits& composite_key) const {
  if (composite_key.size() != spec_.composite_key_len()) {
    throw InvalidLength("composite key has " + std::to_string(composite_key.size()) +
                        " bits, expected " + std::to_string(spec_.composite_key_len()));
  }
}

Bits BotPrg::subkey(const Bits& composite_key, std::size_t index) const {
  check_composite(composite_key);
  return composite_key.slice(index * spec_.base.key_len, spec_.base.key_len);
}

BotValue BotPrg::eval(const Bits& composite_key, RandomTape& tape) const {
  check_composite(composite_key);
  std::optional<Bits> acc;
  bool aborted = false;
  for (std::size_t i = 0; i < spec_.fanin; ++i) {
    // Every subkey is still evaluated after an abort so the tape consumption
    // does not depend on earlier outcomes.
    BotValue part = vote_eval(composite_key.slice(i * spec_.base.key_len, spec_.base.key_len), tape);
    if (part.is_bot()) {
      aborted = true;
      continue;
    }
    if (!acc) {
      acc = part.bits();
    } else {
      *acc ^= part.bits();
    }
  }
  if (aborted) return BotValue::bot();
  return BotValue(std::move(*acc));
}

bool BotPrg::composite_good(const Bits& composite_key) const {
  check_composite(composite_key);
  for (std::size_t i = 0; i < spec_.fanin; ++i) {
    if (base_.classify_key(composite_key.slice(i * spec_.base.key_len, spec_.base.key_len)) ==
        KeyClass::Bad) {
      return false;
    }
  }
  return true;
}

}  // namespace botsig
