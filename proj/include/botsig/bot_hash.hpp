#pragma once

// One-way function and universal one-way hash abstractions with
// recognizable abort.
//
// The UOWHF here is a desk-scale stand-in: the canonical digest of (k, x) is
// a SHAKE256 value under the family's master seed, and a keyed classifier
// marks a mu fraction of inputs as Bad. Good inputs always return the
// digest; Bad inputs return the digest or abort with equal odds. Its
// collision resistance rests on SHAKE256, not on any reduction to a
// pseudodeterministic generator.

#include <functional>
#include <variant>

#include "botsig/bot_prg.hpp"

namespace botsig {

/// One-way function F(x, y) := G(x); the padding y is discarded. The PRG must
/// stretch its key at least threefold and z must have the PRG's output length.
BotValue bot_owf_eval(const BotPrg& prg, const Bits& z, RandomTape& tape);

/// Distinguished marker replacing an abort so it never matches a real image.
struct Top {
  friend bool operator==(Top, Top) { return true; }
};
using TopOrBits = std::variant<Top, Bits>;

TopOrBits f_top(const BotValue& v);

struct BotUowhfSpec {
  std::size_t key_len = 16;
  std::size_t in_len = 32;
  std::size_t out_len = 16;
  double mu = 0.0;
  Bytes master_seed;

  /// Requires in_len > out_len and mu in [0, 1].
  void validate() const;

  friend bool operator==(const BotUowhfSpec&, const BotUowhfSpec&) = default;
};

void to_json(nlohmann::json& j, const BotUowhfSpec& spec);
void from_json(const nlohmann::json& j, BotUowhfSpec& spec);

class BotUowhf {
 public:
  explicit BotUowhf(BotUowhfSpec spec);

  const BotUowhfSpec& spec() const noexcept { return spec_; }

  bool input_good(const Bits& key, const Bits& x) const;
  Bits canonical(const Bits& key, const Bits& x) const;
  BotValue eval(const Bits& key, const Bits& x, RandomTape& tape) const;

 private:
  struct Digest {
    bool good;
    Bits value;
  };
  Digest digest(const Bits& key, const Bits& x) const;

  BotUowhfSpec spec_;
};

/// Randomized evaluator on a fixed-length input.
using Evaluator = std::function<BotValue(const Bits&, RandomTape&)>;

/// F_y(x) := F(y xor x). Inputs to the returned evaluator must match y's length.
Evaluator shift_family(Evaluator base, Bits y);

}  // namespace botsig
