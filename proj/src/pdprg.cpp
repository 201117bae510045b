#include "botsig/pdprg.hpp"

#include "botsig/errors.hpp"
#include "botsig/xof.hpp"

namespace botsig {

void PdPrgSpec::validate() const {
  if (key_len == 0) throw PreconditionViolated("PD-PRG key length must be positive");
  if (out_len <= key_len) throw PreconditionViolated("PD-PRG output must be longer than its key");
  if (!(mu >= 0.0 && mu < 0.5)) throw PreconditionViolated("PD-PRG mu must lie in [0, 1/2)");
  if (!(nu >= 0.0 && nu < 0.5)) throw PreconditionViolated("PD-PRG nu must lie in [0, 1/2)");
}

void to_json(nlohmann::json& j, const PdPrgSpec& spec) {
  j = nlohmann::json{{"key_len", spec.key_len},
                     {"out_len", spec.out_len},
                     {"mu", spec.mu},
                     {"nu", spec.nu},
                     {"master_seed_hex", to_hex(spec.master_seed)}};
}

void from_json(const nlohmann::json& j, PdPrgSpec& spec) {
  j.at("key_len").get_to(spec.key_len);
  j.at("out_len").get_to(spec.out_len);
  j.at("mu").get_to(spec.mu);
  j.at("nu").get_to(spec.nu);
  spec.master_seed = bytes_from_hex(j.at("master_seed_hex").get<std::string>());
}

PdPrg::PdPrg(PdPrgSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

void PdPrg::check_key(const Bits& key) const {
  if (key.size() != spec_.key_len) {
    throw InvalidLength("PD-PRG key has " + std::to_string(key.size()) + " bits, expected " +
                        std::to_string(spec_.key_len));
  }
}

PdPrg::KeyProfile PdPrg::profile(const Bits& key) const {
  check_key(key);
  const std::size_t out_bytes = (spec_.out_len + 7) / 8;
  // Layout: class word | flip word | canonical | bad-key alternative.
  Bytes stream = Shake256("botsig/pdprg")
                     .absorb(spec_.master_seed)
                     .absorb_u64(spec_.out_len)
                     .absorb(key)
                     .squeeze(16 + 2 * out_bytes);
  const std::span<const std::uint8_t> view(stream);
  const bool bad = unit_interval(load_u64_be(view.subspan(0, 8))) < spec_.mu;
  Bits canonical = Bits::from_bytes(view.subspan(16, out_bytes), spec_.out_len);
  Bits alternative;
  if (bad) {
    alternative = Bits::from_bytes(view.subspan(16 + out_bytes, out_bytes), spec_.out_len);
    if (alternative == canonical) alternative.flip(0);
  } else {
    alternative = canonical;
    alternative.flip(load_u64_be(view.subspan(8, 8)) % spec_.out_len);
  }
  return KeyProfile{bad ? KeyClass::Bad : KeyClass::Good, {std::move(canonical), std::move(alternative)}};
}

KeyClass PdPrg::classify_key(const Bits& key) const { return profile(key).key_class; }

Bits PdPrg::canonical_output(const Bits& key) const { return profile(key).support[0]; }

std::size_t PdPrg::sample_branch(const KeyProfile& profile, RandomTape& tape) const {
  if (profile.key_class == KeyClass::Bad) return tape.coin() ? 1 : 0;
  return tape.bernoulli(spec_.nu) ? 1 : 0;
}

Bits PdPrg::eval(const Bits& key, RandomTape& tape) const {
  auto p = profile(key);
  return std::move(p.support[sample_branch(p, tape)]);
}

}  // namespace botsig
