#include "botsig/profile.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "botsig/errors.hpp"

namespace botsig {

BotPrgSpec Profile::prf_prg() const {
  BotPrgSpec s;
  s.base = PdPrgSpec{prg_key_len, 2 * composite_key_len(), prg_mu, prg_nu, master_seed};
  s.vote_reps = vote_reps;
  s.fanin = fanin;
  s.strict_stretch = true;
  return s;
}

BotPrgSpec Profile::owf_prg() const {
  BotPrgSpec s = prf_prg();
  s.base.out_len = owf_stretch * composite_key_len();
  return s;
}

TreePrfSpec Profile::prf() const { return TreePrfSpec{prf_prg(), prf_input_len}; }

OmsParams Profile::oms() const {
  return OmsParams{BotUowhfSpec{hash_key_bits, 2 * lambda, lambda, hash_mu, master_seed},
                   oms_msg_bits};
}

Oms2Params Profile::oms2() const {
  return Oms2Params{lambda, hash_key_bits, oms2_msg_bits, composite_key_len(), hash_mu, master_seed};
}

AuthTreeParams Profile::tree() const {
  return AuthTreeParams{
      tree_ots_params(lambda, hash_key_bits, composite_key_len(), hash_mu, master_seed),
      tree_msg_bits};
}

StatelessParams Profile::stateless() const { return StatelessParams{tree(), prf_prg()}; }

void Profile::validate() const {
  if (name.empty()) throw PreconditionViolated("profile needs a name");
  if (lambda == 0 || prg_key_len == 0) throw PreconditionViolated("profile lengths must be positive");
  if (owf_stretch < 3) {
    throw PreconditionViolated("one-way function generator must stretch its key at least 3x");
  }
  if (amp_suf_p == 0 || amp_uf_reps == 0) {
    throw PreconditionViolated("amplifier sizes must be positive");
  }
  prf_prg().validate();
  owf_prg().validate();
  prf().validate();
  oms().validate();
  oms2().validate();
  stateless().validate();
}

void to_json(nlohmann::json& j, const Profile& p) {
  j = nlohmann::json{{"name", p.name},
                     {"lambda", p.lambda},
                     {"tree_msg_bits", p.tree_msg_bits},
                     {"prg_key_len", p.prg_key_len},
                     {"vote_reps", p.vote_reps},
                     {"fanin", p.fanin},
                     {"prg_mu", p.prg_mu},
                     {"prg_nu", p.prg_nu},
                     {"owf_stretch", p.owf_stretch},
                     {"hash_key_bits", p.hash_key_bits},
                     {"hash_mu", p.hash_mu},
                     {"oms_msg_bits", p.oms_msg_bits},
                     {"oms2_msg_bits", p.oms2_msg_bits},
                     {"amp_suf_p", p.amp_suf_p},
                     {"amp_uf_reps", p.amp_uf_reps},
                     {"prf_input_len", p.prf_input_len},
                     {"master_seed_hex", to_hex(p.master_seed)}};
}

void from_json(const nlohmann::json& j, Profile& p) {
  j.at("name").get_to(p.name);
  j.at("lambda").get_to(p.lambda);
  j.at("tree_msg_bits").get_to(p.tree_msg_bits);
  j.at("prg_key_len").get_to(p.prg_key_len);
  j.at("vote_reps").get_to(p.vote_reps);
  j.at("fanin").get_to(p.fanin);
  j.at("prg_mu").get_to(p.prg_mu);
  j.at("prg_nu").get_to(p.prg_nu);
  j.at("owf_stretch").get_to(p.owf_stretch);
  j.at("hash_key_bits").get_to(p.hash_key_bits);
  j.at("hash_mu").get_to(p.hash_mu);
  j.at("oms_msg_bits").get_to(p.oms_msg_bits);
  j.at("oms2_msg_bits").get_to(p.oms2_msg_bits);
  j.at("amp_suf_p").get_to(p.amp_suf_p);
  j.at("amp_uf_reps").get_to(p.amp_uf_reps);
  j.at("prf_input_len").get_to(p.prf_input_len);
  p.master_seed = bytes_from_hex(j.at("master_seed_hex").get<std::string>());
}

Profile builtin_profile(const std::string& name) {
  Profile p;
  p.name = name;
  if (name == "desk-small") {
    p.lambda = 16;
    p.tree_msg_bits = 4;
    p.prg_key_len = 16;
    p.vote_reps = 64;
    p.fanin = 4;
    // Keeps a 68-level tree PRF below 1e-3 aborts: 68 * 4 subkeys * 3e-6.
    p.prg_mu = 3e-6;
    p.prg_nu = 0.1;
    p.hash_key_bits = 16;
    p.hash_mu = 1e-3;
    p.oms_msg_bits = 16;
    p.oms2_msg_bits = 128;
    p.amp_suf_p = 2;
    p.amp_uf_reps = 64;
    p.prf_input_len = 16;
    p.master_seed = bytes_from_hex("6465736b2d736d616c6c2d7631");
  } else if (name == "desk-large") {
    p.lambda = 32;
    p.tree_msg_bits = 8;
    p.prg_key_len = 32;
    p.vote_reps = 256;
    p.fanin = 4;
    p.prg_mu = 1.8e-6;
    p.prg_nu = 0.1;
    p.hash_key_bits = 32;
    p.hash_mu = 1e-3;
    p.oms_msg_bits = 32;
    p.oms2_msg_bits = 256;
    p.amp_suf_p = 2;
    p.amp_uf_reps = 128;
    p.prf_input_len = 32;
    p.master_seed = bytes_from_hex("6465736b2d6c617267652d7631");
  } else {
    throw PreconditionViolated("unknown profile '" + name + "'");
  }
  p.validate();
  return p;
}

std::vector<std::string> builtin_profile_names() { return {"desk-small", "desk-large"}; }

Profile parse_profile(const std::string& json_text) {
  Profile p;
  try {
    p = nlohmann::json::parse(json_text).get<Profile>();
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("invalid profile JSON: ") + e.what());
  }
  p.validate();
  return p;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DecodeError("cannot read profile file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Profile load_profile(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name_or_path)) return parse_profile(slurp(name_or_path));
  if (const char* dir = std::getenv("BOTSIG_PROFILE_DIR"); dir && *dir) {
    const fs::path candidate = fs::path(dir) / (name_or_path + ".json");
    if (fs::is_regular_file(candidate)) return parse_profile(slurp(candidate));
  }
  return builtin_profile(name_or_path);
}

}  // namespace botsig
