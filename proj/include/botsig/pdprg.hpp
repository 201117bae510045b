#pragma once

// Classical simulator for a pseudodeterministic PRG. A keyed SHAKE256
// expansion fixes, per key, a Good/Bad class, a canonical output and an
// alternative output. Good keys return the canonical output except with
// probability nu, when one key-designated bit is flipped. Bad keys (a mu
// fraction) return canonical or a second fixed string with equal odds.

#include <array>
#include <cstddef>
#include <string>

#include "json.hpp"

#include "botsig/bits.hpp"
#include "botsig/random_tape.hpp"

namespace botsig {

struct PdPrgSpec {
  std::size_t key_len = 16;
  std::size_t out_len = 32;
  double mu = 0.0;
  double nu = 0.0;
  Bytes master_seed;

  /// Throws PreconditionViolated unless out_len > key_len and mu, nu in [0, 1/2).
  void validate() const;

  friend bool operator==(const PdPrgSpec&, const PdPrgSpec&) = default;
};

/// JSON document {key_len, out_len, mu, nu, master_seed_hex}.
void to_json(nlohmann::json& j, const PdPrgSpec& spec);
void from_json(const nlohmann::json& j, PdPrgSpec& spec);

enum class KeyClass { Good, Bad };

class PdPrg {
 public:
  /// Everything the simulator knows about one key; support[0] is the
  /// canonical output.
  struct KeyProfile {
    KeyClass key_class;
    std::array<Bits, 2> support;
  };

  explicit PdPrg(PdPrgSpec spec);

  const PdPrgSpec& spec() const noexcept { return spec_; }

  KeyClass classify_key(const Bits& key) const;
  Bits canonical_output(const Bits& key) const;
  KeyProfile profile(const Bits& key) const;

  /// Index into profile(key).support for one evaluation.
  std::size_t sample_branch(const KeyProfile& profile, RandomTape& tape) const;

  Bits eval(const Bits& key, RandomTape& tape) const;

 private:
  void check_key(const Bits& key) const;

  PdPrgSpec spec_;
};

}  // namespace botsig
