#include "botsig/bot_value.hpp"

#include <cmath>
#include <map>
#include <set>

#include "botsig/errors.hpp"

namespace botsig {

const Bits& BotValue::bits() const {
  if (!bits_) throw PreconditionViolated("payload requested from abort value");
  return *bits_;
}

std::string BotValue::to_text() const { return bits_ ? bits_->to_hex() : std::string("BOT"); }

BotValue BotValue::from_text(std::string_view text, std::size_t nbits) {
  if (text == "BOT") return BotValue::bot();
  return BotValue(Bits::from_hex(text, nbits));
}

Bytes BotValue::encode() const {
  if (!bits_) return Bytes{0x00};
  Bytes out{0x01};
  const auto n = static_cast<std::uint32_t>(bits_->size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(n >> (24 - 8 * i)));
  out.insert(out.end(), bits_->bytes().begin(), bits_->bytes().end());
  return out;
}

BotValue BotValue::decode(std::span<const std::uint8_t> data) {
  if (data.empty()) throw DecodeError("empty BotValue encoding");
  if (data[0] == 0x00) {
    if (data.size() != 1) throw DecodeError("trailing bytes after abort tag");
    return BotValue::bot();
  }
  if (data[0] != 0x01 || data.size() < 5) throw DecodeError("bad BotValue tag");
  std::uint32_t n = 0;
  for (int i = 1; i <= 4; ++i) n = (n << 8) | data[i];
  const auto payload = data.subspan(5);
  if (payload.size() != (n + 7) / 8) throw DecodeError("BotValue payload length mismatch");
  Bits bits = Bits::from_bytes(payload, n);
  if (!std::equal(bits.bytes().begin(), bits.bytes().end(), payload.begin())) {
    throw DecodeError("nonzero padding bits in BotValue payload");
  }
  return BotValue(std::move(bits));
}

BotValue propagate_bot(const BotValue& a, const Bits& b) {
  if (a.is_bot()) return BotValue::bot();
  if (a.bits().size() != b.size()) {
    throw InvalidLength("propagate_bot: replacement length differs from declared length");
  }
  return BotValue(b);
}

BotValue bot_xor(std::span<const BotValue> values) {
  if (values.empty()) throw EmptyInput("bot_xor of an empty list");
  std::optional<std::size_t> len;
  bool saw_bot = false;
  for (const auto& v : values) {
    if (v.is_bot()) {
      saw_bot = true;
      continue;
    }
    if (len && *len != v.bits().size()) throw InvalidLength("bot_xor: mixed payload lengths");
    len = v.bits().size();
  }
  if (saw_bot) return BotValue::bot();
  Bits acc = values.front().bits();
  for (std::size_t i = 1; i < values.size(); ++i) acc ^= values[i].bits();
  return BotValue(std::move(acc));
}

BotValue bot_xor(const BotValue& a, const BotValue& b) {
  const std::array<BotValue, 2> pair{a, b};
  return bot_xor(pair);
}

BotValue vote(std::span<const Bits> samples) {
  if (samples.empty()) throw EmptyInput("vote over zero samples");
  const std::size_t len = samples.front().size();
  std::map<Bits, std::size_t> counts;
  for (const auto& s : samples) {
    if (s.size() != len) throw InvalidLength("vote: samples have different lengths");
    ++counts[s];
  }
  const std::size_t need = vote_threshold(samples.size());
  for (const auto& [value, count] : counts) {
    if (count >= need) return BotValue(value);
  }
  return BotValue::bot();
}

OutputDistribution::OutputDistribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::set<Bits> seen;
  double total = 0.0;
  for (const auto& e : entries_) {
    if (!(e.mass >= 0.0) || e.mass > 1.0) throw PreconditionViolated("mass outside [0,1]");
    if (!seen.insert(e.value).second) throw PreconditionViolated("duplicate support point");
    total += e.mass;
  }
  if (std::fabs(total - 1.0) > kMassTolerance) {
    throw PreconditionViolated("masses do not sum to 1");
  }
}

SetDivision set_division(const OutputDistribution& dist) {
  // Slack absorbs rounding in running sums such as 0.1 * 5.
  constexpr double kHalf = 0.5 + 1e-12;
  for (const auto& e : dist.entries()) {
    if (e.mass >= 0.5) throw PreconditionViolated("set_division: a point mass is >= 1/2");
  }
  SetDivision sets;
  std::size_t current = 0;
  double current_mass = 0.0;
  for (const auto& e : dist.entries()) {
    if (current_mass + e.mass <= kHalf) {
      sets[current].push_back(e.value);
      current_mass += e.mass;
      continue;
    }
    if (++current == sets.size()) {
      throw PreconditionViolated("set_division: distribution needs more than three sets");
    }
    sets[current].push_back(e.value);
    current_mass = e.mass;
  }
  return sets;
}

}  // namespace botsig
