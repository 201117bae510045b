#include "botsig/harness/games.hpp"

#include "botsig/errors.hpp"

namespace botsig {

PrgOracle prg_oracle(const BotPrg& prg) {
  return PrgOracle{prg.spec().composite_key_len(), prg.spec().out_len(),
                   [&prg](const Bits& key, RandomTape& t) { return prg.eval(key, t); }};
}

MultitimeTranscript multitime_transcript(const PrgOracle& prg, std::size_t q, bool world,
                                         RandomTape& tape) {
  if (q == 0) throw PreconditionViolated("multi-time game needs q >= 1");
  MultitimeTranscript tr;
  tr.world = world;
  tr.key = tape.bits(prg.key_len);
  const Bits y = tape.bits(prg.out_len);
  for (std::size_t i = 0; i < q; ++i) {
    BotValue v = prg.eval(tr.key, tape);
    tr.samples.push_back(world ? propagate_bot(v, y) : v);
    tr.underlying.push_back(std::move(v));
  }
  return tr;
}

namespace {

const BotValue* first_non_bot(std::span<const BotValue> samples) {
  for (const auto& s : samples) {
    if (!s.is_bot()) return &s;
  }
  return nullptr;
}

bool majority_ones(const Bits& b) {
  std::size_t ones = 0;
  for (std::size_t i = 0; i < b.size(); ++i) ones += b[i];
  return 2 * ones > b.size();
}

}  // namespace

namespace distinguishers {

MultitimeDistinguisher constant_zero() {
  return {"constant", [](const PrgOracle&, std::span<const BotValue>, RandomTape&) { return false; }};
}

MultitimeDistinguisher monobit() {
  return {"monobit", [](const PrgOracle&, std::span<const BotValue> s, RandomTape&) {
            const BotValue* v = first_non_bot(s);
            return !(v && majority_ones(v->bits()));
          }};
}

MultitimeDistinguisher abort_pattern() {
  return {"abort_pattern", [](const PrgOracle&, std::span<const BotValue> s, RandomTape&) {
            return first_non_bot(s) != nullptr;
          }};
}

MultitimeDistinguisher consistency() {
  return {"consistency", [](const PrgOracle&, std::span<const BotValue> s, RandomTape&) {
            const BotValue* v = first_non_bot(s);
            for (const auto& x : s) {
              if (!x.is_bot() && v && x != *v) return true;
            }
            return false;
          }};
}

MultitimeDistinguisher fresh_key_comparison() {
  return {"fresh_key_comparison", [](const PrgOracle& prg, std::span<const BotValue> s, RandomTape& t) {
            const BotValue own = prg.eval(t.bits(prg.key_len), t);
            if (own.is_bot()) return t.coin();
            for (const auto& x : s) {
              if (x == own) return false;
            }
            return true;
          }};
}

std::vector<MultitimeDistinguisher> multitime_builtins() {
  return {constant_zero(), monobit(), abort_pattern(), consistency(), fresh_key_comparison()};
}

PrfDistinguisher prf_constant_zero() {
  return {"constant", [](PrfOracleHandle&, RandomTape&) { return false; }};
}

PrfDistinguisher prf_consistency_probe() {
  return {"consistency_probe", [](PrfOracleHandle& o, RandomTape& t) {
            const Bits x = t.bits(o.input_len());
            const BotValue a = o.query(x);
            const BotValue b = o.query(x);
            return !a.is_bot() && !b.is_bot() && a != b;
          }};
}

PrfDistinguisher prf_monobit() {
  return {"monobit", [](PrfOracleHandle& o, RandomTape& t) {
            std::size_t ones = 0;
            std::size_t total = 0;
            while (o.remaining() > 0) {
              const BotValue v = o.query(t.bits(o.input_len()));
              if (v.is_bot()) continue;
              for (std::size_t i = 0; i < v.bits().size(); ++i) ones += v.bits()[i];
              total += v.bits().size();
            }
            return !(2 * ones > total);
          }};
}

std::vector<PrfDistinguisher> prf_builtins() {
  return {prf_constant_zero(), prf_consistency_probe(), prf_monobit()};
}

}  // namespace distinguishers

ExperimentReport multitime_game(const PrgOracle& prg, std::size_t q,
                                const MultitimeDistinguisher& d, std::size_t trials,
                                RandomTape& tape, const RunOptions& opts) {
  if (q == 0) throw PreconditionViolated("multi-time game needs q >= 1");
  const auto correct =
      run_trials<std::uint8_t>(trials, tape, opts.jobs, [&](std::size_t, RandomTape& t) {
        const bool world = t.coin();
        const auto tr = multitime_transcript(prg, q, world, t);
        return static_cast<std::uint8_t>(d.guess(prg, tr.samples, t) == world);
      });
  ExperimentReport r = advantage_report("multitime/" + d.name, count_true(correct), trials, opts.z);
  r.details["q"] = q;
  return r;
}

PrfOracle prf_oracle(const TreePrf& prf) {
  return PrfOracle{prf.spec().key_len(), prf.spec().input_len, prf.spec().output_len(),
                   [&prf](const Bits& key, const Bits& x, RandomTape& t) { return prf.eval(key, x, t); }};
}

PrfOracleHandle::PrfOracleHandle(const PrfOracle& prf, Bits key, bool world,
                                 bool cache_random_function, std::size_t budget, RandomTape& tape)
    : prf_(prf), key_(std::move(key)), world_(world), cache_(cache_random_function),
      budget_(budget), tape_(tape) {}

BotValue PrfOracleHandle::query(const Bits& x) {
  if (log_.size() >= budget_) throw PreconditionViolated("PRF query budget exhausted");
  if (x.size() != prf_.input_len) throw InvalidLength("PRF query has the wrong input length");
  BotValue out = prf_.eval(key_, x, tape_);
  if (world_) {
    Bits fx;
    if (cache_) {
      auto it = table_.find(x);
      if (it == table_.end()) it = table_.emplace(x, tape_.bits(prf_.output_len)).first;
      fx = it->second;
    } else {
      fx = tape_.bits(prf_.output_len);
    }
    out = out.is_bot() ? BotValue::bot() : BotValue(std::move(fx));
  }
  log_.push_back(PrfQuery{x, out});
  return out;
}

bool functionally_consistent(std::span<const PrfQuery> log) {
  std::map<Bits, Bits> seen;
  for (const auto& q : log) {
    if (q.output.is_bot()) continue;
    auto [it, fresh] = seen.emplace(q.input, q.output.bits());
    if (!fresh && it->second != q.output.bits()) return false;
  }
  return true;
}

ExperimentReport prf_game(const PrfOracle& prf, const PrfDistinguisher& d, std::size_t trials,
                          RandomTape& tape, const PrfGameOptions& game, const RunOptions& opts) {
  if (game.budget == 0) throw PreconditionViolated("PRF game needs a query budget of at least 1");
  struct Outcome {
    std::uint8_t correct = 0;
    std::uint8_t consistent = 1;
  };
  const auto outcomes = run_trials<Outcome>(trials, tape, opts.jobs, [&](std::size_t, RandomTape& t) {
    const bool world = t.coin();
    PrfOracleHandle handle(prf, t.bits(prf.key_len), world, game.cache_random_function, game.budget, t);
    const bool guess = d.guess(handle, t);
    // Only the world-1 oracle promises consistency; real keys outside the
    // good set may legitimately answer a repeated input two ways.
    return Outcome{static_cast<std::uint8_t>(guess == world),
                   static_cast<std::uint8_t>(!world || functionally_consistent(handle.log()))};
  });
  std::uint64_t correct = 0;
  std::uint64_t inconsistent = 0;
  for (const auto& o : outcomes) {
    correct += o.correct;
    inconsistent += o.consistent ? 0 : 1;
  }
  ExperimentReport r = advantage_report("prf/" + d.name, correct, trials, opts.z);
  r.details["budget"] = game.budget;
  r.details["cached_world1"] = game.cache_random_function;
  r.details["inconsistent_world1_transcripts"] = inconsistent;
  return r;
}

}  // namespace botsig
