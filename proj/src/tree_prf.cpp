#include "botsig/tree_prf.hpp"

#include "botsig/errors.hpp"

namespace botsig {

void TreePrfSpec::validate() const {
  prg.validate();
  if (prg.out_len() != 2 * prg.composite_key_len()) {
    throw PreconditionViolated("tree PRF needs a PRG whose output doubles its key");
  }
  if (input_len == 0) throw PreconditionViolated("tree PRF input length must be at least 1");
}

Bits half_select(const Bits& y, bool b) {
  if (y.size() % 2 != 0) throw InvalidLength("half_select needs an even-length string");
  const std::size_t half = y.size() / 2;
  return y.slice(b ? half : 0, half);
}

TreePrf::TreePrf(TreePrfSpec spec) : spec_(std::move(spec)), prg_(spec_.prg) { spec_.validate(); }

BotValue TreePrf::eval(const Bits& key, const Bits& x, RandomTape& tape,
                       std::vector<Bits>* trace) const {
  if (key.size() != spec_.key_len()) throw InvalidLength("tree PRF key length mismatch");
  if (x.size() != spec_.input_len) throw InvalidLength("tree PRF input length mismatch");
  Bits k = key;
  if (trace) trace->push_back(k);
  for (std::size_t i = 0; i < x.size(); ++i) {
    BotValue expanded = prg_.eval(k, tape);
    if (expanded.is_bot()) return BotValue::bot();
    k = half_select(expanded.bits(), x[i]);
    if (trace) trace->push_back(k);
  }
  return BotValue(std::move(k));
}

double prf_bot_rate_bound(std::size_t m, double mu, double delta) {
  return static_cast<double>(m) * mu + delta;
}

}  // namespace botsig
