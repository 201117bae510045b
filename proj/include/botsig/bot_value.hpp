#pragma once

// Value algebra for primitives with recognizable abort: the BotValue type,
// abort-propagating selection and XOR, the 60% vote combiner, and the
// greedy three-way division of a finite output distribution.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "botsig/bits.hpp"

namespace botsig {

/// Either a bitstring or the abort symbol (written "BOT" in text form).
class BotValue {
 public:
  /// Default-constructs the abort symbol.
  BotValue() = default;
  explicit BotValue(Bits bits) : bits_(std::move(bits)) {}

  static BotValue bot() { return BotValue(); }

  bool is_bot() const noexcept { return !bits_.has_value(); }
  explicit operator bool() const noexcept { return bits_.has_value(); }

  /// Payload; throws PreconditionViolated on the abort symbol.
  const Bits& bits() const;

  friend bool operator==(const BotValue&, const BotValue&) = default;

  /// "BOT" or the payload's hex digits.
  std::string to_text() const;
  static BotValue from_text(std::string_view text, std::size_t nbits);

  /// Tag byte (0x00 abort, 0x01 bits), then for bits a 4-byte big-endian
  /// bit length followed by the packed payload.
  Bytes encode() const;
  static BotValue decode(std::span<const std::uint8_t> data);

 private:
  std::optional<Bits> bits_;
};

/// Abort-pattern transfer: abort when `a` aborts, otherwise `b` verbatim.
/// When `a` carries bits its length must match `b`.
BotValue propagate_bot(const BotValue& a, const Bits& b);

/// XOR that absorbs aborts.
BotValue bot_xor(std::span<const BotValue> values);
BotValue bot_xor(const BotValue& a, const BotValue& b);

/// Smallest count that reaches 60% of n samples, i.e. ceil(3n/5).
constexpr std::size_t vote_threshold(std::size_t n) { return (3 * n + 4) / 5; }

/// Returns the value held by at least 60% of the samples, else abort.
BotValue vote(std::span<const Bits> samples);

/// A finite distribution over bitstrings; construction validates it.
class OutputDistribution {
 public:
  struct Entry {
    Bits value;
    double mass;
  };

  static constexpr double kMassTolerance = 1e-9;

  explicit OutputDistribution(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  std::vector<Entry> entries_;
};

using SetDivision = std::array<std::vector<Bits>, 3>;

/// Greedy split of the support into at most three sets of mass <= 1/2,
/// scanning entries in the order given. Every point mass must be < 1/2.
SetDivision set_division(const OutputDistribution& dist);

}  // namespace botsig
