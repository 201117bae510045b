#include "doctest.h"

#include <cmath>

#include "botsig/errors.hpp"
#include "botsig/tree_prf.hpp"
#include "test_util.hpp"

using namespace botsig;
using test::B;

namespace {

BotPrgSpec doubling_prg(double mu, double nu, std::size_t reps = 16) {
  BotPrgSpec s;
  s.base = PdPrgSpec{8, 32, mu, nu, bytes_from_hex("7072")};
  s.vote_reps = reps;
  s.fanin = 2;
  return s;
}

/// Independent GGM oracle: unrolls the noiseless generator with canonical
/// outputs and plain XOR, without going through the voting code.
Bits brute_force_ggm(const PdPrg& base, std::size_t fanin, const Bits& key, const Bits& x) {
  Bits k = key;
  const std::size_t sub = base.spec().key_len;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Bits y(base.spec().out_len);
    for (std::size_t j = 0; j < fanin; ++j) y ^= base.canonical_output(k.slice(j * sub, sub));
    const std::size_t half = y.size() / 2;
    k = x[i] ? y.slice(half, half) : y.slice(0, half);
  }
  return k;
}

}  // namespace

TEST_CASE("half_select") {
  CHECK(half_select(B("10110100"), false) == B("1011"));
  CHECK(half_select(B("10110100"), true) == B("0100"));
  RandomTape tape(1);
  for (int i = 0; i < 50; ++i) {
    const Bits y = tape.bits(2 * (1 + tape.below(40)));
    CHECK(half_select(y, false).concat(half_select(y, true)) == y);
  }
  CHECK_THROWS_AS(half_select(B("101"), false), InvalidLength);
}

TEST_CASE("spec validation") {
  CHECK_NOTHROW(TreePrf(TreePrfSpec{doubling_prg(0, 0), 4}));
  CHECK_THROWS_AS(TreePrf(TreePrfSpec{doubling_prg(0, 0), 0}), PreconditionViolated);
  BotPrgSpec wrong = doubling_prg(0, 0);
  wrong.base.out_len = 30;
  CHECK_THROWS_AS(TreePrf(TreePrfSpec{wrong, 4}), PreconditionViolated);
}

TEST_CASE("one level with input 0 is the first half of the generator output") {
  RandomTape tape(2);
  const TreePrf prf(TreePrfSpec{doubling_prg(0, 0), 1});
  for (int i = 0; i < 20; ++i) {
    const Bits k = tape.bits(16);
    const BotValue y = prf.prg().eval(k, tape);
    CHECK(prf.eval(k, B("0"), tape) == BotValue(y.bits().slice(0, 16)));
    CHECK(prf.eval(k, B("1"), tape) == BotValue(y.bits().slice(16, 16)));
  }
  CHECK_THROWS_AS(prf.eval(tape.bits(15), B("0"), tape), InvalidLength);
  CHECK_THROWS_AS(prf.eval(tape.bits(16), B("01"), tape), InvalidLength);
}

TEST_CASE("noiseless evaluation matches the brute-force tree on every 3-bit input") {
  RandomTape tape(3);
  const TreePrf prf(TreePrfSpec{doubling_prg(0, 0), 3});
  for (int trial = 0; trial < 10; ++trial) {
    const Bits k = tape.bits(16);
    for (unsigned x = 0; x < 8; ++x) {
      const Bits in = B(std::string{char('0' + ((x >> 2) & 1)), char('0' + ((x >> 1) & 1)),
                                    char('0' + (x & 1))});
      CHECK(prf.eval(k, in, tape) == BotValue(brute_force_ggm(prf.prg().base(), 2, k, in)));
      CHECK(prf.eval(k, in, tape) == prf.eval(k, in, tape));
    }
  }
}

TEST_CASE("inputs sharing a prefix share intermediate keys") {
  RandomTape tape(4);
  const TreePrf prf(TreePrfSpec{doubling_prg(0, 0), 10});
  for (int trial = 0; trial < 50; ++trial) {
    const Bits k = tape.bits(16);
    const Bits x = tape.bits(10);
    const std::size_t shared = tape.below(10);
    Bits x2 = x;
    x2.flip(shared);
    std::vector<Bits> t1;
    std::vector<Bits> t2;
    prf.eval(k, x, tape, &t1);
    prf.eval(k, x2, tape, &t2);
    REQUIRE(t1.size() == 11);
    REQUIRE(t2.size() == 11);
    for (std::size_t i = 0; i <= shared; ++i) CHECK(t1[i] == t2[i]);
    CHECK(t1[shared + 1] != t2[shared + 1]);
  }
}

TEST_CASE("abort determinism of the family") {
  RandomTape tape(5);
  const TreePrf prf(TreePrfSpec{doubling_prg(0, 0.1, 32), 8});
  for (int i = 0; i < 100; ++i) {
    const Bits k = tape.bits(16);
    const Bits x = tape.bits(8);
    std::optional<Bits> first;
    for (int r = 0; r < 200; ++r) {
      const BotValue v = prf.eval(k, x, tape);
      if (v.is_bot()) continue;
      if (!first) first = v.bits();
      CHECK(v.bits() == *first);
    }
  }
}

TEST_CASE("pointwise abort rate respects m * mu_eff") {
  RandomTape tape(6);
  const BotPrgSpec g = doubling_prg(0.01, 0.1, 16);
  const BotPrg prg(g);
  const int level_trials = 20000;
  int level_bots = 0;
  for (int i = 0; i < level_trials; ++i) level_bots += prg.eval(tape.bits(16), tape).is_bot();
  const double mu_eff = level_bots / double(level_trials);
  CHECK(mu_eff > 0.0);
  for (std::size_t m : {4, 8, 16, 32}) {
    const TreePrf prf(TreePrfSpec{g, m});
    const int n = 4000;
    int bots = 0;
    for (int i = 0; i < n; ++i) bots += prf.eval(tape.bits(16), tape.bits(m), tape).is_bot();
    const double rate = bots / double(n);
    const double bound = prf_bot_rate_bound(m, mu_eff, 0.0);
    CAPTURE(m);
    CHECK(rate <= bound + test::three_sigma(bound, n));
    // The per-level survival product is the sharper prediction.
    const double product = 1.0 - std::pow(1.0 - mu_eff, double(m));
    CHECK(std::abs(rate - product) <= 4.0 * std::sqrt(product * (1 - product) / n) + 0.005);
  }
}

TEST_CASE("prf_bot_rate_bound") {
  CHECK(prf_bot_rate_bound(0, 0.1, 0.0) == 0.0);
  CHECK(prf_bot_rate_bound(32, 0.001, 0.0) == doctest::Approx(0.032));
  CHECK(prf_bot_rate_bound(5, 0.01, 0.02) < prf_bot_rate_bound(6, 0.01, 0.02));
  CHECK(prf_bot_rate_bound(5, 0.01, 0.02) < prf_bot_rate_bound(5, 0.02, 0.02));
  CHECK(prf_bot_rate_bound(5, 0.01, 0.02) < prf_bot_rate_bound(5, 0.01, 0.03));
}
