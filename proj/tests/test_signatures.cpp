#include "doctest.h"

#include <cmath>

#include "botsig/errors.hpp"
#include "botsig/profile.hpp"
#include "botsig/signatures/amplified.hpp"
#include "botsig/signatures/auth_tree.hpp"
#include "test_util.hpp"

using namespace botsig;

namespace {

Profile noiseless() {
  Profile p = builtin_profile("desk-small");
  p.prg_mu = 0;
  p.prg_nu = 0;
  p.hash_mu = 0;
  return p;
}

OmsParams oms_params(std::size_t q, double mu) {
  return OmsParams{BotUowhfSpec{16, 32, 16, mu, bytes_from_hex("01")}, q};
}

/// Test double whose signer aborts with a fixed probability and whose
/// signatures are the message itself under a key tag.
struct CoinScheme {
  struct Sig {
    std::uint64_t key;
    Bits m;
    friend bool operator==(const Sig&, const Sig&) = default;
  };
  using SigningKey = std::uint64_t;
  using VerifyKey = std::uint64_t;
  using Signature = Sig;
  using KeyPair = BasicKeyPair<SigningKey, VerifyKey>;

  double success = 1.0;

  std::size_t message_bits() const { return 8; }
  KeyPair keygen(RandomTape& t) const {
    const auto k = t.next_u64();
    return {k, k};
  }
  MaybeSignature<Sig> sign(SigningKey& sk, const Bits& m, RandomTape& t) const {
    if (!t.bernoulli(success)) return std::nullopt;
    return Sig{sk, m};
  }
  Verdict verify(const VerifyKey& vk, const Bits& m, const MaybeSignature<Sig>& s, RandomTape&) const {
    if (!s) return Verdict::Abort;
    return s->key == vk && s->m == m ? Verdict::Accept : Verdict::Reject;
  }
};

static_assert(SignatureScheme<CoinScheme>);
static_assert(SignatureScheme<OmsScheme>);
static_assert(SignatureScheme<Oms2Scheme>);
static_assert(SignatureScheme<StatefulScheme>);
static_assert(SignatureScheme<StatelessScheme>);
static_assert(SignatureScheme<AmplifiedSuf<Oms2Scheme>>);
static_assert(SignatureScheme<AmplifiedUf<Oms2Scheme>>);

template <class S>
int noiseless_failures(const S& scheme, int rounds, RandomTape& tape) {
  int failures = 0;
  for (int i = 0; i < rounds; ++i) {
    auto kp = scheme.keygen(tape);
    const Bits m = tape.bits(scheme.message_bits());
    const auto sig = scheme.sign(kp.sk, m, tape);
    failures += scheme.verify(kp.vk, m, sig, tape) != Verdict::Accept;
  }
  return failures;
}

}  // namespace

TEST_CASE("OMS key shapes and reproducibility") {
  RandomTape tape(1);
  const OmsScheme one(oms_params(1, 0));
  const auto kp = one.keygen(tape);
  CHECK(kp.sk.preimages.size() == 1);
  CHECK(kp.vk.images.size() == 1);
  CHECK(kp.vk.hash_keys.size() == 1);

  const OmsScheme s(oms_params(16, 0));
  const auto k2 = s.keygen(tape);
  for (const auto& row : k2.vk.images) {
    for (const auto& y : row) CHECK_FALSE(y.is_bot());
  }
  RandomTape a(5);
  RandomTape b(5);
  CHECK(s.keygen(a) == s.keygen(b));
  CHECK_THROWS_AS(OmsScheme(OmsParams{BotUowhfSpec{16, 30, 16, 0, {}}, 4}), PreconditionViolated);
}

TEST_CASE("OMS signing selects preimages by message bit") {
  RandomTape tape(2);
  const OmsScheme s(oms_params(16, 0));
  const auto kp = s.keygen(tape);
  const auto zero = s.sign(kp.sk, Bits(16), tape);
  REQUIRE(zero);
  for (std::size_t j = 0; j < 16; ++j) CHECK(zero->preimages[j] == kp.sk.preimages[j][0]);
  const Bits m = tape.bits(16);
  CHECK(s.sign(kp.sk, m, tape) == s.sign(kp.sk, m, tape));
  for (std::size_t j = 0; j < 16; ++j) {
    Bits m2 = m;
    m2.flip(j);
    const auto a = s.sign(kp.sk, m, tape);
    const auto b = s.sign(kp.sk, m2, tape);
    for (std::size_t i = 0; i < 16; ++i) CHECK((a->preimages[i] == b->preimages[i]) == (i != j));
  }
  CHECK_THROWS_AS(s.sign(kp.sk, tape.bits(15), tape), InvalidLength);
}

TEST_CASE("OMS verification") {
  RandomTape tape(3);
  const OmsScheme s(oms_params(16, 0));
  auto kp = s.keygen(tape);
  const Bits m = tape.bits(16);
  const auto sig = s.sign(kp.sk, m, tape);
  CHECK(s.verify(kp.vk, m, sig, tape) == Verdict::Accept);
  CHECK(s.verify(kp.vk, m, std::nullopt, tape) == Verdict::Reject);
  SUBCASE("an aborted stored image rejects") {
    OmsVerifyKey vk = kp.vk;
    vk.images[3][m[3]] = BotValue::bot();
    CHECK(s.verify(vk, m, sig, tape) == Verdict::Reject);
  }
  SUBCASE("malformed signatures reject") {
    OmsSignature short_sig = *sig;
    short_sig.preimages.pop_back();
    CHECK(s.verify(kp.vk, m, short_sig, tape) == Verdict::Reject);
    OmsSignature bad_len = *sig;
    bad_len.preimages[0] = Bits(5);
    CHECK(s.verify(kp.vk, m, bad_len, tape) == Verdict::Reject);
    CHECK(s.verify(kp.vk, tape.bits(7), sig, tape) == Verdict::Reject);
  }
  SUBCASE("tampered preimages reject") {
    int accepts = 0;
    for (int i = 0; i < 1000; ++i) {
      OmsSignature t = *sig;
      t.preimages[tape.below(16)].flip(tape.below(32));
      accepts += s.verify(kp.vk, m, t, tape) == Verdict::Accept;
    }
    CHECK(accepts == 0);
  }
}

TEST_CASE("OMS2") {
  RandomTape tape(4);
  Oms2Params p = noiseless().oms2();
  CHECK_THROWS_AS(Oms2Scheme(Oms2Params{16, 16, 64, 64, 0, {}}), PreconditionViolated);
  CHECK_NOTHROW(Oms2Scheme(Oms2Params{16, 16, 65, 64, 0, {}}));
  const Oms2Scheme s(p);
  CHECK(noiseless_failures(s, 200, tape) == 0);

  SUBCASE("keygen from coins is a function of the coins") {
    const Bits coins = tape.bits(p.coin_bits);
    RandomTape n1(1);
    RandomTape n2(2);
    CHECK(s.keygen_from_coins(coins, n1) == s.keygen_from_coins(coins, n2));
    CHECK_THROWS_AS(s.keygen_from_coins(tape.bits(p.coin_bits + 1), n1), InvalidLength);
  }
  SUBCASE("an aborting message hash aborts signing and verification") {
    p.mu = 1.0;
    const Oms2Scheme noisy(p);
    auto kp = noisy.keygen(tape);
    const Bits m = tape.bits(p.msg_bits);
    MaybeSignature<Oms2Signature> sig = noisy.sign(kp.sk, m, tape);
    int tries = 0;
    while (sig && tries++ < 100) sig = noisy.sign(kp.sk, m, tape);
    CHECK_FALSE(sig.has_value());
    CHECK(noisy.verify(kp.vk, m, sig, tape) == Verdict::Abort);
  }
  SUBCASE("wrong hash key length rejects") {
    auto kp = s.keygen(tape);
    const Bits m = tape.bits(p.msg_bits);
    auto sig = s.sign(kp.sk, m, tape);
    sig->hash_key = Bits(3);
    CHECK(s.verify(kp.vk, m, sig, tape) == Verdict::Reject);
  }
}

TEST_CASE("OMS2 correctness at the small profile") {
  RandomTape tape(5);
  const Profile prof = builtin_profile("desk-small");
  const Oms2Scheme s(prof.oms2());
  const int n = 2000;
  const int ok = n - noiseless_failures(s, n, tape);
  const double q = double(prof.oms2_msg_bits);
  const double bound = std::pow(1 - prof.hash_mu, 2 * q + 3);
  CHECK(ok / double(n) >= bound - test::three_sigma(bound, n));
}

TEST_CASE("stateful tree signatures") {
  RandomTape tape(6);
  const StatefulScheme s(noiseless().tree());
  auto kp = s.keygen(tape);
  const Bits m = test::B("0110");
  const auto first = s.sign(kp.sk, m, tape);
  const TreeMemory after_first = kp.sk.memory;
  const auto second = s.sign(kp.sk, m, tape);
  CHECK(first == second);
  CHECK(kp.sk.memory == after_first);
  CHECK(s.verify(kp.vk, m, first, tape) == Verdict::Accept);

  const auto other = s.sign(kp.sk, test::B("0101"), tape);
  REQUIRE(other);
  for (std::size_t i = 0; i < 3; ++i) CHECK(other->links[i] == first->links[i]);
  CHECK_FALSE(other->leaf == first->leaf);

  SUBCASE("memory invariant: child signatures only under existing children") {
    for (const auto& [label, entry] : kp.sk.memory) {
      if (!entry.child_signature) continue;
      Bits l0 = label;
      l0.push_back(false);
      Bits l1 = label;
      l1.push_back(true);
      CHECK(kp.sk.memory.at(l0).keys.has_value());
      CHECK(kp.sk.memory.at(l1).keys.has_value());
    }
  }
  SUBCASE("truncated chains reject") {
    auto t = *first;
    t.links.pop_back();
    CHECK(s.verify(kp.vk, m, t, tape) == Verdict::Reject);
  }
  SUBCASE("swapped child keys reject") {
    for (std::size_t i = 0; i < 4; ++i) {
      auto t = *first;
      std::swap(t.links[i].left, t.links[i].right);
      CHECK(s.verify(kp.vk, m, t, tape) == Verdict::Reject);
    }
  }
  SUBCASE("a signature for one message does not verify another") {
    CHECK(s.verify(kp.vk, test::B("0111"), first, tape) == Verdict::Reject);
  }
  SUBCASE("abort verifies to abort") {
    CHECK(s.verify(kp.vk, m, std::nullopt, tape) == Verdict::Abort);
  }
  CHECK_THROWS_AS(s.sign(kp.sk, test::B("011"), tape), InvalidLength);
}

TEST_CASE("stateful round trips over random messages") {
  RandomTape tape(7);
  const StatefulScheme s(noiseless().tree());
  auto kp = s.keygen(tape);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const Bits m = tape.bits(4);
    failures += s.verify(kp.vk, m, s.sign(kp.sk, m, tape), tape) != Verdict::Accept;
  }
  CHECK(failures == 0);
}

TEST_CASE("tree parameter validation") {
  AuthTreeParams p = noiseless().tree();
  p.msg_bits = 3;
  CHECK_THROWS_AS(StatefulScheme{p}, PreconditionViolated);
  p = noiseless().tree();
  p.ots.msg_bits -= 1;
  CHECK_THROWS_AS(StatefulScheme{p}, PreconditionViolated);
}

TEST_CASE("stateless signatures") {
  RandomTape tape(8);
  const StatelessScheme s(noiseless().stateless());
  const auto kp = s.keygen(tape);
  CHECK(kp.sk.prf_keys.size() == 4);
  CHECK(kp.sk.masks.size() == 4);
  for (std::size_t i = 1; i <= 4; ++i) {
    CHECK(kp.sk.masks[i - 1][0].size() == i + 64);
    CHECK(s.level_prf(i).spec().input_len == i + 64);
  }
  const Bits m = tape.bits(4);
  const auto a = s.sign(kp.sk, m, tape);
  const auto b = s.sign(kp.sk, m, tape);
  CHECK(a == b);
  CHECK(s.verify(kp.vk, m, a, tape) == Verdict::Accept);
  CHECK_THROWS_AS(s.sign(kp.sk, tape.bits(5), tape), InvalidLength);

  SUBCASE("matches the stateful signer fed the same node coins") {
    const StatefulScheme stateful(noiseless().tree());
    StatefulSigningKey sk{kp.sk.root, {}};
    const NodeCoinSource coins = [&](const NodeLabel& label) { return s.node_coins(kp.sk, label, tape); };
    for (int i = 0; i < 8; ++i) {
      const Bits msg = tape.bits(4);
      CHECK(stateful.sign(sk, msg, coins, tape) == s.sign(kp.sk, msg, tape));
    }
  }
}

TEST_CASE("stateless correctness at the small profile") {
  RandomTape tape(9);
  const Profile prof = builtin_profile("desk-small");
  const StatelessScheme s(prof.stateless());
  const int n = 300;
  const int ok = n - noiseless_failures(s, n, tape);
  const double bound = std::pow(1 - 1e-3, 4 * 4 * 16 + 10 * 4);
  CHECK(ok / double(n) >= bound - test::three_sigma(bound, n));
}

TEST_CASE("first-non-abort amplifier") {
  RandomTape tape(10);
  SUBCASE("index 0 when nothing aborts") {
    const AmplifiedSuf<CoinScheme> amp(CoinScheme{1.0}, 3);
    CHECK(amp.copies() == 9);
    auto kp = amp.keygen(tape);
    for (int i = 0; i < 20; ++i) {
      const auto sig = amp.sign(kp.sk, tape.bits(8), tape);
      REQUIRE(sig);
      CHECK(sig->index == 0);
    }
  }
  SUBCASE("all-abort base aborts") {
    const AmplifiedSuf<CoinScheme> amp(CoinScheme{0.0}, 2);
    auto kp = amp.keygen(tape);
    const Bits m = tape.bits(8);
    const auto sig = amp.sign(kp.sk, m, tape);
    CHECK_FALSE(sig);
    CHECK(amp.verify(kp.vk, m, sig, tape) == Verdict::Abort);
  }
  SUBCASE("dispatch matches the base verdict under vk_j") {
    const CoinScheme base{0.5};
    const AmplifiedSuf<CoinScheme> amp(base, 2);
    auto kp = amp.keygen(tape);
    for (int i = 0; i < 100; ++i) {
      const std::size_t j = tape.below(6);
      const Bits m = tape.bits(8);
      const bool honest = tape.coin();
      const CoinScheme::Sig inner{honest ? kp.sk[j] : tape.next_u64(), m};
      const IndexedSignature<CoinScheme::Sig> sig{j, inner};
      CHECK(amp.verify(kp.vk, m, sig, tape) == base.verify(kp.vk[j], m, inner, tape));
    }
    const IndexedSignature<CoinScheme::Sig> out_of_range{6, {kp.sk[0], Bits(8)}};
    CHECK(amp.verify(kp.vk, Bits(8), out_of_range, tape) == Verdict::Reject);
  }
  SUBCASE("all-abort rate tracks (1 - c)^(3p)") {
    const double c = 0.3;
    const AmplifiedSuf<CoinScheme> amp(CoinScheme{c}, 2);
    auto kp = amp.keygen(tape);
    const int n = 10000;
    int aborts = 0;
    for (int i = 0; i < n; ++i) aborts += !amp.sign(kp.sk, Bits(8), tape).has_value();
    const double expect = std::pow(1 - c, 6);
    CHECK(std::abs(aborts / double(n) - expect) <= 4 * std::sqrt(expect * (1 - expect) / n));
  }
  CHECK_THROWS_AS(AmplifiedSuf<CoinScheme>(CoinScheme{}, 0), PreconditionViolated);
}

TEST_CASE("accept-if-any amplifier") {
  RandomTape tape(11);
  const AmplifiedUf<CoinScheme> amp(CoinScheme{1.0}, 64);
  auto kp = amp.keygen(tape);
  const Bits m = tape.bits(8);
  auto sig = amp.sign(kp.sk, m, tape);
  REQUIRE(sig);
  CHECK(sig->size() == 64);
  CHECK(amp.verify(kp.vk, m, sig, tape) == Verdict::Accept);
  SUBCASE("one valid component suffices") {
    auto one = *sig;
    for (std::size_t i = 0; i < one.size(); ++i) {
      if (i != 17) one[i] = std::nullopt;
    }
    CHECK(amp.verify(kp.vk, m, one, tape) == Verdict::Accept);
    one[17] = std::nullopt;
    CHECK(amp.verify(kp.vk, m, one, tape) == Verdict::Reject);
  }
  SUBCASE("wrong arity rejects") {
    auto shorter = *sig;
    shorter.pop_back();
    CHECK(amp.verify(kp.vk, m, shorter, tape) == Verdict::Reject);
  }
  CHECK(amp.verify(kp.vk, m, std::nullopt, tape) == Verdict::Abort);
}

TEST_CASE("noiseless collapse and abort soundness across schemes") {
  RandomTape tape(12);
  const Profile p = noiseless();
  const OmsScheme oms(p.oms());
  const Oms2Scheme oms2(p.oms2());
  const StatefulScheme stateful(p.tree());
  const StatelessScheme stateless(p.stateless());
  const AmplifiedSuf<Oms2Scheme> suf(Oms2Scheme(p.oms2()), p.amp_suf_p);
  const AmplifiedUf<Oms2Scheme> uf(Oms2Scheme(p.oms2()), 8);
  CHECK(noiseless_failures(oms, 200, tape) == 0);
  CHECK(noiseless_failures(oms2, 200, tape) == 0);
  CHECK(noiseless_failures(stateful, 100, tape) == 0);
  CHECK(noiseless_failures(stateless, 50, tape) == 0);
  CHECK(noiseless_failures(suf, 50, tape) == 0);
  CHECK(noiseless_failures(uf, 50, tape) == 0);

  auto check_abort = [&](const auto& s) {
    auto kp = s.keygen(tape);
    const Bits m = tape.bits(s.message_bits());
    CHECK(s.verify(kp.vk, m, std::nullopt, tape) != Verdict::Accept);
  };
  check_abort(oms);
  check_abort(oms2);
  check_abort(stateful);
  check_abort(stateless);
  check_abort(suf);
  check_abort(uf);
}
