#pragma once

// Distinguishing games for generators and functions with recognizable abort.
// World 0 is the real primitive; world 1 replaces every non-abort output
// with a uniform value while keeping the real abort pattern. Distinguishers
// return their guess of the world bit.

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "botsig/bot_value.hpp"
#include "botsig/harness/estimators.hpp"
#include "botsig/tree_prf.hpp"

namespace botsig {

/// Public description of a keyed generator.
struct PrgOracle {
  std::size_t key_len = 0;
  std::size_t out_len = 0;
  std::function<BotValue(const Bits& key, RandomTape&)> eval;
};

PrgOracle prg_oracle(const BotPrg& prg);

struct MultitimeTranscript {
  bool world = false;
  Bits key;
  /// The real evaluations in both worlds.
  std::vector<BotValue> underlying;
  /// What the distinguisher sees.
  std::vector<BotValue> samples;
};

/// One draw of the q-sample view in the given world.
MultitimeTranscript multitime_transcript(const PrgOracle& prg, std::size_t q, bool world,
                                         RandomTape& tape);

struct MultitimeDistinguisher {
  std::string name;
  std::function<bool(const PrgOracle&, std::span<const BotValue> samples, RandomTape&)> guess;
};

namespace distinguishers {
/// Always guesses world 0.
MultitimeDistinguisher constant_zero();
/// World 0 iff the majority of bits in the first non-abort sample are ones.
MultitimeDistinguisher monobit();
/// World 0 iff every sample aborted.
MultitimeDistinguisher abort_pattern();
/// World 0 iff all non-abort samples agree.
MultitimeDistinguisher consistency();
/// Evaluates the public generator on a key of its own and guesses world 0
/// iff that output equals a non-abort sample.
MultitimeDistinguisher fresh_key_comparison();
std::vector<MultitimeDistinguisher> multitime_builtins();
}  // namespace distinguishers

ExperimentReport multitime_game(const PrgOracle& prg, std::size_t q,
                                const MultitimeDistinguisher& d, std::size_t trials,
                                RandomTape& tape, const RunOptions& opts = {});

/// Public description of a keyed function family.
struct PrfOracle {
  std::size_t key_len = 0;
  std::size_t input_len = 0;
  std::size_t output_len = 0;
  std::function<BotValue(const Bits& key, const Bits& x, RandomTape&)> eval;
};

PrfOracle prf_oracle(const TreePrf& prf);

struct PrfQuery {
  Bits input;
  BotValue output;
};

/// Oracle handle given to a PRF distinguisher for one trial.
class PrfOracleHandle {
 public:
  PrfOracleHandle(const PrfOracle& prf, Bits key, bool world, bool cache_random_function,
                  std::size_t budget, RandomTape& tape);

  /// Throws PreconditionViolated once the query budget is spent.
  BotValue query(const Bits& x);

  std::size_t input_len() const noexcept { return prf_.input_len; }
  std::size_t remaining() const noexcept { return budget_ - log_.size(); }
  const std::vector<PrfQuery>& log() const noexcept { return log_; }

 private:
  const PrfOracle& prf_;
  Bits key_;
  bool world_;
  bool cache_;
  std::size_t budget_;
  RandomTape& tape_;
  std::map<Bits, Bits> table_;
  std::vector<PrfQuery> log_;
};

/// True iff no input appears twice in the log with two different non-abort outputs.
bool functionally_consistent(std::span<const PrfQuery> log);

struct PrfDistinguisher {
  std::string name;
  std::function<bool(PrfOracleHandle&, RandomTape&)> guess;
};

namespace distinguishers {
PrfDistinguisher prf_constant_zero();
/// Queries one input twice; guesses world 1 iff two non-abort answers differ.
PrfDistinguisher prf_consistency_probe();
/// World 0 iff the ones across all answers to distinct inputs are a majority.
PrfDistinguisher prf_monobit();
std::vector<PrfDistinguisher> prf_builtins();
}  // namespace distinguishers

struct PrfGameOptions {
  std::size_t budget = 8;
  /// World 1 answers repeated inputs from a cache; false builds the
  /// inconsistent stub used to test the consistency probe.
  bool cache_random_function = true;
};

ExperimentReport prf_game(const PrfOracle& prf, const PrfDistinguisher& d, std::size_t trials,
                          RandomTape& tape, const PrfGameOptions& game = {},
                          const RunOptions& opts = {});

}  // namespace botsig
