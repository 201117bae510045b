#include "botsig/bot_hash.hpp"

#include "botsig/errors.hpp"
#include "botsig/xof.hpp"

namespace botsig {

BotValue bot_owf_eval(const BotPrg& prg, const Bits& z, RandomTape& tape) {
  const std::size_t key_len = prg.spec().composite_key_len();
  if (prg.spec().out_len() < 3 * key_len) {
    throw PreconditionViolated("one-way function needs a PRG with output >= 3x key length");
  }
  if (z.size() != prg.spec().out_len()) throw InvalidLength("OWF input length mismatch");
  return prg.eval(z.slice(0, key_len), tape);
}

TopOrBits f_top(const BotValue& v) {
  if (v.is_bot()) return Top{};
  return v.bits();
}

void BotUowhfSpec::validate() const {
  if (in_len <= out_len) throw PreconditionViolated("UOWHF must compress: in_len > out_len");
  if (out_len == 0 || key_len == 0) throw PreconditionViolated("UOWHF lengths must be positive");
  if (!(mu >= 0.0 && mu <= 1.0)) throw PreconditionViolated("UOWHF mu must lie in [0, 1]");
}

void to_json(nlohmann::json& j, const BotUowhfSpec& spec) {
  j = nlohmann::json{{"key_len", spec.key_len},   {"in_len", spec.in_len},
                     {"out_len", spec.out_len},   {"mu", spec.mu},
                     {"master_seed_hex", to_hex(spec.master_seed)}};
}

void from_json(const nlohmann::json& j, BotUowhfSpec& spec) {
  j.at("key_len").get_to(spec.key_len);
  j.at("in_len").get_to(spec.in_len);
  j.at("out_len").get_to(spec.out_len);
  j.at("mu").get_to(spec.mu);
  spec.master_seed = bytes_from_hex(j.at("master_seed_hex").get<std::string>());
}

BotUowhf::BotUowhf(BotUowhfSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

BotUowhf::Digest BotUowhf::digest(const Bits& key, const Bits& x) const {
  if (key.size() != spec_.key_len) throw InvalidLength("UOWHF key length mismatch");
  if (x.size() != spec_.in_len) throw InvalidLength("UOWHF input length mismatch");
  const std::size_t out_bytes = (spec_.out_len + 7) / 8;
  Bytes stream = Shake256("botsig/uowhf")
                     .absorb(spec_.master_seed)
                     .absorb_u64(spec_.out_len)
                     .absorb(key)
                     .absorb(x)
                     .squeeze(8 + out_bytes);
  const std::span<const std::uint8_t> view(stream);
  const bool good = !(unit_interval(load_u64_be(view.subspan(0, 8))) < spec_.mu);
  return Digest{good, Bits::from_bytes(view.subspan(8), spec_.out_len)};
}

bool BotUowhf::input_good(const Bits& key, const Bits& x) const { return digest(key, x).good; }

Bits BotUowhf::canonical(const Bits& key, const Bits& x) const { return digest(key, x).value; }

BotValue BotUowhf::eval(const Bits& key, const Bits& x, RandomTape& tape) const {
  Digest d = digest(key, x);
  if (!d.good && tape.coin()) return BotValue::bot();
  return BotValue(std::move(d.value));
}

Evaluator shift_family(Evaluator base, Bits y) {
  return [base = std::move(base), y = std::move(y)](const Bits& x, RandomTape& tape) {
    if (x.size() != y.size()) throw InvalidLength("shifted family input length mismatch");
    return base(y ^ x, tape);
  };
}

}  // namespace botsig
