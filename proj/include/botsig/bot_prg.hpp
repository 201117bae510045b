#pragma once

// Two-stage PRG with recognizable abort: a 60% vote over repeated PD-PRG
// evaluations of one key, then an abort-absorbing XOR over `fanin` subkeys.

#include <cstddef>

#include "botsig/bot_value.hpp"
#include "botsig/pdprg.hpp"

namespace botsig {

struct BotPrgSpec {
  PdPrgSpec base;
  std::size_t vote_reps = 256;
  std::size_t fanin = 16;
  /// Require base.out_len > composite_key_len() (stretch beyond the composite key).
  bool strict_stretch = false;

  std::size_t composite_key_len() const noexcept { return fanin * base.key_len; }
  std::size_t out_len() const noexcept { return base.out_len; }

  void validate() const;

  friend bool operator==(const BotPrgSpec&, const BotPrgSpec&) = default;
};

void to_json(nlohmann::json& j, const BotPrgSpec& spec);
void from_json(const nlohmann::json& j, BotPrgSpec& spec);

class BotPrg {
 public:
  explicit BotPrg(BotPrgSpec spec);

  const BotPrgSpec& spec() const noexcept { return spec_; }
  const PdPrg& base() const noexcept { return base_; }

  /// Votes over vote_reps evaluations of the base generator on one subkey.
  BotValue vote_eval(const Bits& key, RandomTape& tape) const;

  /// Splits the composite key into fanin subkeys and XORs their votes.
  BotValue eval(const Bits& composite_key, RandomTape& tape) const;

  /// True iff every subkey is in the base generator's good set.
  bool composite_good(const Bits& composite_key) const;

  Bits subkey(const Bits& composite_key, std::size_t index) const;

 private:
  void check_composite(const Bits& composite_key) const;

  BotPrgSpec spec_;
  PdPrg base_;
};

}  // namespace botsig
