// Command-line front end: key lifecycle, sign/verify, estimators and games.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "botsig/codec.hpp"
#include "botsig/errors.hpp"
#include "botsig/harness/forgery.hpp"
#include "botsig/harness/games.hpp"
#include "botsig/profile.hpp"
#include "botsig/repetition_pke.hpp"

using namespace botsig;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kUsage = 2;

/// File or argument problem; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool table = false;
  bool noiseless = false;
  std::string profile = "desk-small";
  std::string scheme;
  std::string out;
  std::string key;
  std::string vk;
  std::string sig;
  std::string msg;
  std::string kind;
  std::string target;
  std::string distinguisher = "all";
  std::string adversary = "all";
  std::size_t trials = 1000;
  std::size_t reps = 32;
  std::size_t q = 4;
  std::size_t budget = 8;
  bool no_cache = false;
  std::size_t pke_q = 64;
  double delta = 0.3;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw UsageError("write failed for " + path);
}

Envelope read_envelope(const std::string& path, ArtifactKind want) {
  Envelope env = decode_envelope(read_file(path));
  if (env.kind != want) throw UsageError(path + " holds the wrong kind of artifact");
  return env;
}

Profile effective_profile(const Options& o) {
  Profile p = load_profile(o.profile);
  if (o.noiseless) {
    p.prg_mu = 0;
    p.prg_nu = 0;
    p.hash_mu = 0;
  }
  return p;
}

/// Builds the scheme named by `tag` from the profile and hands it to f.
template <class F>
int with_scheme(SchemeTag tag, const Profile& p, F&& f) {
  switch (tag) {
    case SchemeTag::Oms:
      return f(OmsScheme(p.oms()));
    case SchemeTag::Oms2:
      return f(Oms2Scheme(p.oms2()));
    case SchemeTag::Stateful:
      return f(StatefulScheme(p.tree()));
    case SchemeTag::Stateless:
      return f(StatelessScheme(p.stateless()));
    case SchemeTag::AmplifiedSuf:
      return f(AmplifiedSuf<Oms2Scheme>(Oms2Scheme(p.oms2()), p.amp_suf_p));
    case SchemeTag::AmplifiedUf:
      return f(AmplifiedUf<Oms2Scheme>(Oms2Scheme(p.oms2()), p.amp_uf_reps));
  }
  throw UsageError("unknown scheme");
}

Bits parse_message(const std::string& hex, std::size_t nbits) {
  if (hex.size() != (nbits + 3) / 4) {
    throw UsageError("message must be " + std::to_string((nbits + 3) / 4) + " hex digits (" +
                     std::to_string(nbits) + " bits)");
  }
  return Bits::from_hex(hex, nbits);
}

int emit(const std::vector<ExperimentReport>& reports, const Options& o) {
  bool failed = false;
  for (const auto& r : reports) {
    std::cout << to_json_line(r) << "\n";
    failed = failed || r.verdict == ReportVerdict::Fail;
  }
  if (o.table) std::cout << format_table(reports);
  return failed ? kRejected : kOk;
}

int cmd_keygen(const Options& o) {
  const Profile p = load_profile(o.profile);
  const SchemeTag tag = scheme_from_name(o.scheme);
  RandomTape tape(o.seed);
  const std::string profile_json = json(p).dump();
  return with_scheme(tag, p, [&](const auto& s) {
    auto kp = s.keygen(tape);
    write_file(o.out + ".sk",
               encode_envelope({tag, ArtifactKind::SigningKey, profile_json, encode_value(kp.sk)}));
    write_file(o.out + ".vk",
               encode_envelope({tag, ArtifactKind::VerifyKey, profile_json, encode_value(kp.vk)}));
    std::cout << json{{"command", "keygen"},
                      {"scheme", scheme_name(tag)},
                      {"profile", p.name},
                      {"message_bits", s.message_bits()},
                      {"sk", o.out + ".sk"},
                      {"vk", o.out + ".vk"}}
                     .dump()
              << "\n";
    return kOk;
  });
}

int cmd_sign(const Options& o) {
  const Envelope env = read_envelope(o.key, ArtifactKind::SigningKey);
  const Profile p = parse_profile(env.profile);
  RandomTape tape(o.seed);
  std::string out = o.out;
  if (out.empty()) {
    out = o.key.size() > 3 && o.key.ends_with(".sk") ? o.key.substr(0, o.key.size() - 3) : o.key;
    out += ".sig";
  }
  return with_scheme(env.tag, p, [&](const auto& s) {
    using S = std::remove_cvref_t<decltype(s)>;
    auto sk = decode_value<typename S::SigningKey>(env.body);
    const Bits m = parse_message(o.msg, s.message_bits());
    const auto sig = s.sign(sk, m, tape);
    write_file(out, encode_envelope({env.tag, ArtifactKind::Signature, env.profile, encode_value(sig)}));
    if (env.tag == SchemeTag::Stateful) {
      // The tree memory is part of the signing key and must persist.
      write_file(o.key, encode_envelope({env.tag, ArtifactKind::SigningKey, env.profile, encode_value(sk)}));
    }
    std::cout << json{{"command", "sign"},
                      {"scheme", scheme_name(env.tag)},
                      {"message", m.to_hex()},
                      {"aborted", !sig.has_value()},
                      {"signature", out}}
                     .dump()
              << "\n";
    return kOk;
  });
}

int cmd_verify(const Options& o) {
  const Envelope vk_env = read_envelope(o.vk, ArtifactKind::VerifyKey);
  const Envelope sig_env = read_envelope(o.sig, ArtifactKind::Signature);
  if (vk_env.tag != sig_env.tag) throw UsageError("signature and key belong to different schemes");
  const Profile p = parse_profile(vk_env.profile);
  RandomTape tape(o.seed);
  return with_scheme(vk_env.tag, p, [&](const auto& s) {
    using S = std::remove_cvref_t<decltype(s)>;
    const auto vk = decode_value<typename S::VerifyKey>(vk_env.body);
    const auto sig = decode_value<MaybeSignature<typename S::Signature>>(sig_env.body);
    const Bits m = parse_message(o.msg, s.message_bits());
    const Verdict v = s.verify(vk, m, sig, tape);
    std::cout << json{{"command", "verify"}, {"scheme", scheme_name(vk_env.tag)}, {"verdict", to_string(v)}}.dump()
              << "\n";
    return v == Verdict::Accept ? kOk : kRejected;
  });
}

int cmd_inspect(const Options& o) {
  const Envelope env = decode_envelope(read_file(o.key));
  const Profile p = parse_profile(env.profile);
  return with_scheme(env.tag, p, [&](const auto& s) {
    using S = std::remove_cvref_t<decltype(s)>;
    json body;
    switch (env.kind) {
      case ArtifactKind::SigningKey:
        body = to_debug_json(decode_value<typename S::SigningKey>(env.body));
        break;
      case ArtifactKind::VerifyKey:
        body = to_debug_json(decode_value<typename S::VerifyKey>(env.body));
        break;
      case ArtifactKind::Signature:
        body = to_debug_json(decode_value<MaybeSignature<typename S::Signature>>(env.body));
        break;
    }
    std::cout << json{{"scheme", scheme_name(env.tag)}, {"profile", p.name}, {"body", body}}.dump(2) << "\n";
    return kOk;
  });
}

Evaluator bot_rate_target(const std::string& target, const Profile& p, KeySource& keys,
                          std::vector<std::shared_ptr<void>>& keep) {
  if (target == "bot-prg") {
    auto prg = std::make_shared<BotPrg>(p.prf_prg());
    keep.push_back(prg);
    keys = [n = p.composite_key_len()](RandomTape& t) { return t.bits(n); };
    return [prg](const Bits& k, RandomTape& t) { return prg->eval(k, t); };
  }
  if (target == "prf") {
    auto prf = std::make_shared<TreePrf>(p.prf());
    keep.push_back(prf);
    const std::size_t klen = p.composite_key_len();
    keys = [klen, m = p.prf_input_len](RandomTape& t) { return t.bits(klen + m); };
    return [prf, klen](const Bits& kx, RandomTape& t) {
      return prf->eval(kx.slice(0, klen), kx.slice(klen, kx.size() - klen), t);
    };
  }
  if (target == "uowhf") {
    auto h = std::make_shared<BotUowhf>(p.oms().hash);
    keep.push_back(h);
    const std::size_t klen = p.hash_key_bits;
    keys = [klen, n = 2 * p.lambda](RandomTape& t) { return t.bits(klen + n); };
    return [h, klen](const Bits& kx, RandomTape& t) {
      return h->eval(kx.slice(0, klen), kx.slice(klen, kx.size() - klen), t);
    };
  }
  if (target == "owf") {
    auto prg = std::make_shared<BotPrg>(p.owf_prg());
    keep.push_back(prg);
    keys = [n = p.owf_prg().out_len()](RandomTape& t) { return t.bits(n); };
    return [prg](const Bits& z, RandomTape& t) { return bot_owf_eval(*prg, z, t); };
  }
  if (target == "pdprg") {
    auto g = std::make_shared<PdPrg>(p.prf_prg().base);
    keep.push_back(g);
    keys = [n = p.prg_key_len](RandomTape& t) { return t.bits(n); };
    return [g](const Bits& k, RandomTape& t) { return BotValue(g->eval(k, t)); };
  }
  throw UsageError("unknown target '" + target + "'");
}

int cmd_estimate(const Options& o) {
  const Profile p = effective_profile(o);
  RandomTape tape(o.seed);
  const RunOptions run{o.jobs, kDefaultZ};
  std::vector<ExperimentReport> reports;
  if (o.kind == "bot-rate" || o.kind == "pseudodet") {
    KeySource keys;
    std::vector<std::shared_ptr<void>> keep;
    const Evaluator eval = bot_rate_target(o.target, p, keys, keep);
    if (o.kind == "bot-rate") {
      reports.push_back(estimate_bot_rate(eval, keys, o.trials, tape, run));
    } else {
      std::vector<Bits> ks;
      for (std::size_t i = 0; i < o.trials; ++i) ks.push_back(keys(tape));
      reports.push_back(check_pseudodeterminism(eval, ks, o.reps, tape, 0.0, run));
    }
    reports.back().name += "/" + o.target;
    reports.back().details["profile"] = p.name;
  } else if (o.kind == "correctness") {
    const SchemeTag tag = scheme_from_name(o.target);
    const double mu = p.hash_mu;
    std::optional<double> bound;
    switch (tag) {
      case SchemeTag::Oms:
        bound = std::pow(1 - mu, 4.0 * p.oms_msg_bits);
        break;
      case SchemeTag::Oms2:
        bound = std::pow(1 - mu, 2.0 * p.oms2_msg_bits + 3);
        break;
      case SchemeTag::Stateless:
        bound = std::pow(1 - mu, 4.0 * p.tree_msg_bits * p.lambda + 10.0 * p.tree_msg_bits);
        break;
      default:
        break;
    }
    with_scheme(tag, p, [&](const auto& s) {
      reports.push_back(estimate_correctness(s, o.trials, tape, run, bound, "correctness/" + o.target));
      return kOk;
    });
    reports.back().details["profile"] = p.name;
    reports.back().details["mu"] = mu;
  } else {
    throw UsageError("estimate kind must be bot-rate, pseudodet or correctness");
  }
  return emit(reports, o);
}

template <class S>
void forgery_games(const S& scheme, const Options& o, bool one_message, RandomTape& tape,
                   std::vector<ExperimentReport>& reports) {
  const RunOptions run{o.jobs, kDefaultZ};
  std::vector<Adversary<S>> advs{adversaries::replayer<S>(), adversaries::random_forger<S>(),
                                 adversaries::sk_leak<S>()};
  bool matched = false;
  for (const auto& a : advs) {
    if (o.adversary != "all" && o.adversary != a.name) continue;
    matched = true;
    ExperimentReport r = forgery_report(scheme, a, o.trials, tape, one_message, run);
    if (a.name != "sk_leak") {
      // Honest baselines must never win; the leak is a positive control.
      r.analytic_bound = 0.0;
      r.bound_kind = BoundKind::AtMost;
      r.ci_halfwidth = 0.0;
      judge(r);
    }
    reports.push_back(std::move(r));
  }
  if (!matched) throw UsageError("unknown adversary '" + o.adversary + "'");
}

int cmd_game(const Options& o) {
  const Profile p = effective_profile(o);
  RandomTape tape(o.seed);
  const RunOptions run{o.jobs, kDefaultZ};
  std::vector<ExperimentReport> reports;
  if (o.kind == "multitime") {
    const BotPrg prg(p.prf_prg());
    const PrgOracle oracle = prg_oracle(prg);
    for (const auto& d : distinguishers::multitime_builtins()) {
      if (o.distinguisher != "all" && o.distinguisher != d.name) continue;
      reports.push_back(multitime_game(oracle, o.q, d, o.trials, tape, run));
    }
  } else if (o.kind == "prf") {
    const TreePrf prf(p.prf());
    const PrfOracle oracle = prf_oracle(prf);
    PrfGameOptions game{o.budget, !o.no_cache};
    for (const auto& d : distinguishers::prf_builtins()) {
      if (o.distinguisher != "all" && o.distinguisher != d.name) continue;
      reports.push_back(prf_game(oracle, d, o.trials, tape, game, run));
    }
  } else if (o.kind == "omsuf" || o.kind == "suf") {
    const bool one = o.kind == "omsuf";
    const std::string scheme = o.scheme.empty() ? (one ? "oms" : "stateful") : o.scheme;
    with_scheme(scheme_from_name(scheme), p, [&](const auto& s) {
      forgery_games(s, o, one, tape, reports);
      return kOk;
    });
  } else {
    throw UsageError("game must be multitime, prf, omsuf or suf");
  }
  if (reports.empty()) throw UsageError("no distinguisher named '" + o.distinguisher + "'");
  for (auto& r : reports) r.details["profile"] = p.name;
  return emit(reports, o);
}

int cmd_pke_demo(const Options& o) {
  RandomTape tape(o.seed);
  const MockBasePke base(32, o.delta, bytes_from_hex("706b65"));
  const RunOptions run{o.jobs, kDefaultZ};
  const auto keys = rep_keygen(base, o.pke_q, tape);
  const auto wrong = run_trials<std::uint8_t>(o.trials, tape, run.jobs, [&](std::size_t, RandomTape& t) {
    const bool bit = t.coin();
    return static_cast<std::uint8_t>(rep_decrypt(base, keys, rep_encrypt(base, keys, bit, t), t) != MaybeBit(bit));
  });
  const double analytic = std::pow(o.delta, static_cast<double>(o.pke_q));
  auto r = proportion_report("pke/lifted_failure", count_true(wrong), o.trials, run.z, analytic,
                             BoundKind::AtMost);
  r.details["q"] = o.pke_q;
  r.details["delta"] = o.delta;
  std::size_t caught = 0;
  const MockBasePke exact(32, 0.0, bytes_from_hex("706b65"));
  for (int i = 0; i < 100; ++i) {
    auto cts = rep_encrypt(exact, keys, tape.coin(), tape);
    cts[tape.below(cts.size())].masked ^= true;
    caught += !rep_decrypt(exact, keys, cts, tape).has_value();
  }
  auto planted = proportion_report("pke/planted_disagreement_caught", caught, 100, run.z, 1.0,
                                   BoundKind::AtLeast);
  planted.ci_halfwidth = 0.0;
  judge(planted);
  return emit({r, planted}, o);
}

int cmd_params(const Options& o) {
  const Profile p = load_profile(o.profile);
  const OmsScheme oms(p.oms());
  const StatelessScheme stateless(p.stateless());
  json derived{{"composite_key_len", p.composite_key_len()},
               {"prf_output_len", p.prf().output_len()},
               {"owf_prg_out_len", p.owf_prg().out_len()},
               {"oms_vk_bits", oms.vk_bits()},
               {"tree_ots_msg_bits", p.tree().ots.msg_bits},
               {"stateless_prf_input_len_max", p.tree_msg_bits + p.composite_key_len()},
               {"bound_oms", std::pow(1 - p.hash_mu, 4.0 * p.oms_msg_bits)},
               {"bound_oms2", std::pow(1 - p.hash_mu, 2.0 * p.oms2_msg_bits + 3)},
               {"bound_stateless",
                std::pow(1 - p.hash_mu, 4.0 * p.tree_msg_bits * p.lambda + 10.0 * p.tree_msg_bits)}};
  std::cout << json{{"profile", p}, {"derived", derived}}.dump() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signatures and pseudorandom primitives with recognizable abort"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "Master seed for all randomness");
  app.add_option("--jobs", o.jobs, "Parallel trial threads for estimate/game")->check(CLI::Range(1U, 256U));
  app.add_flag("--table", o.table, "Also print a plain-text summary table");

  auto* keygen = app.add_subcommand("keygen", "Generate a key pair into PATH.sk and PATH.vk");
  keygen->add_option("--scheme", o.scheme, "oms, oms2, stateful, stateless, amp-suf or amp-uf")->required();
  keygen->add_option("--profile", o.profile, "Profile name or JSON file");
  keygen->add_option("--out", o.out, "Output path prefix")->required();

  auto* sign = app.add_subcommand("sign", "Sign a hex message");
  sign->add_option("--key", o.key, "Signing key file")->required();
  sign->add_option("--msg", o.msg, "Message as hex digits")->required();
  sign->add_option("--out", o.out, "Signature file (default: key path with .sig)");

  auto* verify = app.add_subcommand("verify", "Verify a signature; exit 1 unless accepted");
  verify->add_option("--vk", o.vk, "Verification key file")->required();
  verify->add_option("--msg", o.msg, "Message as hex digits")->required();
  verify->add_option("--sig", o.sig, "Signature file")->required();

  auto* inspect = app.add_subcommand("inspect", "Print any key or signature file as JSON");
  inspect->add_option("file", o.key, "Key or signature file")->required();

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimators");
  estimate->add_option("kind", o.kind, "bot-rate, pseudodet or correctness")->required();
  estimate->add_option("--target", o.target,
                       "bot-rate/pseudodet: pdprg, bot-prg, prf, uowhf, owf; correctness: a scheme")
      ->required();
  estimate->add_option("--trials", o.trials, "Trials (keys for pseudodet)");
  estimate->add_option("--reps", o.reps, "Evaluations per key for pseudodet");
  estimate->add_option("--profile", o.profile, "Profile name or JSON file");
  estimate->add_flag("--noiseless", o.noiseless, "Zero every noise parameter of the profile");

  auto* game = app.add_subcommand("game", "Distinguishing and forgery experiments");
  game->add_option("kind", o.kind, "multitime, prf, omsuf or suf")->required();
  game->add_option("--trials", o.trials, "Independent runs");
  game->add_option("--profile", o.profile, "Profile name or JSON file");
  game->add_option("--q", o.q, "Samples per multitime transcript");
  game->add_option("--budget", o.budget, "PRF query budget");
  game->add_flag("--no-cache", o.no_cache, "Use the non-caching world-1 PRF stub");
  game->add_option("--distinguisher", o.distinguisher, "Distinguisher name or all");
  game->add_option("--adversary", o.adversary, "replayer, random_forger, sk_leak or all");
  game->add_option("--scheme", o.scheme, "Scheme for omsuf/suf");
  game->add_flag("--noiseless", o.noiseless, "Zero every noise parameter of the profile");

  auto* pke = app.add_subcommand("pke-demo", "Parallel-repetition decryption lifter");
  pke->add_option("--q", o.pke_q, "Repetitions")->check(CLI::PositiveNumber);
  pke->add_option("--delta", o.delta, "Base abort rate")->check(CLI::Range(0.0, 0.999999));
  pke->add_option("--trials", o.trials, "Trials");

  auto* params = app.add_subcommand("params", "Print a profile and derived lengths");
  params->add_option("--profile", o.profile, "Profile name or JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*keygen) return cmd_keygen(o);
    if (*sign) return cmd_sign(o);
    if (*verify) return cmd_verify(o);
    if (*inspect) return cmd_inspect(o);
    if (*estimate) return cmd_estimate(o);
    if (*game) return cmd_game(o);
    if (*pke) return cmd_pke_demo(o);
    if (*params) return cmd_params(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const botsig::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
