#pragma once

// Named parameter sets tying every module together. Profiles are JSON
// documents; the two built-ins can be shadowed by files in the directory
// named by BOTSIG_PROFILE_DIR.

#include <string>
#include <vector>

#include "json.hpp"

#include "botsig/signatures/auth_tree.hpp"
#include "botsig/tree_prf.hpp"

namespace botsig {

struct Profile {
  std::string name;
  /// Security parameter: UOWHF output length and half its input length.
  std::size_t lambda = 16;
  /// Message length of the tree schemes.
  std::size_t tree_msg_bits = 4;
  /// Base generator subkey length; the composite key is fanin times this.
  std::size_t prg_key_len = 16;
  std::size_t vote_reps = 64;
  std::size_t fanin = 4;
  double prg_mu = 0.0;
  double prg_nu = 0.0;
  /// Output of the one-way-function generator as a multiple of its key.
  std::size_t owf_stretch = 3;
  std::size_t hash_key_bits = 16;
  double hash_mu = 0.0;
  /// Message lengths of the standalone one-message schemes.
  std::size_t oms_msg_bits = 16;
  std::size_t oms2_msg_bits = 128;
  /// Correctness polynomial p of the first-non-abort amplifier (3p keys).
  std::size_t amp_suf_p = 2;
  /// Key count of the accept-if-any amplifier (4 lambda by default).
  std::size_t amp_uf_reps = 64;
  /// Input length of the standalone tree PRF.
  std::size_t prf_input_len = 16;
  Bytes master_seed;

  std::size_t composite_key_len() const noexcept { return fanin * prg_key_len; }

  /// Length-doubling generator behind the tree PRFs.
  BotPrgSpec prf_prg() const;
  /// Generator stretched owf_stretch times for the one-way function.
  BotPrgSpec owf_prg() const;
  TreePrfSpec prf() const;
  OmsParams oms() const;
  Oms2Params oms2() const;
  AuthTreeParams tree() const;
  StatelessParams stateless() const;

  /// Checks every module's own constraints plus the cross-module ones.
  void validate() const;

  friend bool operator==(const Profile&, const Profile&) = default;
};

void to_json(nlohmann::json& j, const Profile& p);
void from_json(const nlohmann::json& j, Profile& p);

/// "desk-small" or "desk-large".
Profile builtin_profile(const std::string& name);
std::vector<std::string> builtin_profile_names();

/// Resolves `name_or_path` as an existing file, then as
/// $BOTSIG_PROFILE_DIR/<name>.json, then as a built-in name. The result is
/// validated.
Profile load_profile(const std::string& name_or_path);

Profile parse_profile(const std::string& json_text);

}  // namespace botsig
