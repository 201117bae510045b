#pragma once

// GGM-style tree PRF over a length-doubling PRG with recognizable abort.

#include <cstddef>
#include <vector>

#include "botsig/bot_prg.hpp"

namespace botsig {

struct TreePrfSpec {
  /// Must double: prg.out_len() == 2 * prg.composite_key_len().
  BotPrgSpec prg;
  std::size_t input_len = 1;

  std::size_t key_len() const noexcept { return prg.composite_key_len(); }
  std::size_t output_len() const noexcept { return prg.composite_key_len(); }

  void validate() const;
};

/// First half of y when b is 0, second half when b is 1.
Bits half_select(const Bits& y, bool b);

class TreePrf {
 public:
  explicit TreePrf(TreePrfSpec spec);

  const TreePrfSpec& spec() const noexcept { return spec_; }
  const BotPrg& prg() const noexcept { return prg_; }

  /// Descends one level per input bit, aborting as soon as the PRG aborts.
  /// When `trace` is given it receives k_0, k_1, ... for every level reached.
  BotValue eval(const Bits& key, const Bits& x, RandomTape& tape,
                std::vector<Bits>* trace = nullptr) const;

 private:
  TreePrfSpec spec_;
  BotPrg prg_;
};

/// Pointwise abort bound m * mu + delta for an m-level tree.
double prf_bot_rate_bound(std::size_t m, double mu, double delta);

}  // namespace botsig
