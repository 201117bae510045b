#include "doctest.h"

#include <algorithm>
#include <set>

#include "botsig/bot_value.hpp"
#include "botsig/errors.hpp"
#include "botsig/random_tape.hpp"
#include "test_util.hpp"

using namespace botsig;
using test::B;
using test::V;

TEST_CASE("propagate_bot") {
  CHECK(propagate_bot(BotValue::bot(), B("1100")).is_bot());
  CHECK(propagate_bot(V("0101"), B("1100")) == V("1100"));
  CHECK(propagate_bot(V("1111"), B("1111")) == V("1111"));
  CHECK_THROWS_AS(propagate_bot(V("010"), B("1100")), InvalidLength);
}

TEST_CASE("bot_xor") {
  const std::vector<BotValue> one{V("1010")};
  CHECK(bot_xor(one) == V("1010"));
  CHECK(bot_xor(V("1010"), V("0110")) == V("1100"));
  const std::vector<BotValue> with_bot{V("1010"), BotValue::bot(), V("0001")};
  CHECK(bot_xor(with_bot).is_bot());
  const std::vector<BotValue> mixed{V("1010"), V("10")};
  CHECK_THROWS_AS(bot_xor(mixed), InvalidLength);
  CHECK_THROWS_AS(bot_xor(std::span<const BotValue>{}), EmptyInput);
}

TEST_CASE("bot_xor absorption and self-inverse") {
  RandomTape tape(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<BotValue> vals;
    bool any_bot = false;
    const std::size_t n = 1 + tape.below(5);
    for (std::size_t i = 0; i < n; ++i) {
      if (tape.bernoulli(0.2)) {
        vals.push_back(BotValue::bot());
        any_bot = true;
      } else {
        vals.emplace_back(tape.bits(12));
      }
    }
    CHECK(bot_xor(vals).is_bot() == any_bot);
    const BotValue x(tape.bits(12));
    CHECK(bot_xor(x, x) == BotValue(Bits(12)));
  }
}

TEST_CASE("vote") {
  const Bits y = B("1011");
  const Bits z = B("0100");
  std::vector<Bits> ten(10, y);
  CHECK(vote(ten) == BotValue(y));
  std::vector<Bits> split(5, y);
  split.insert(split.end(), 5, z);
  CHECK(vote(split).is_bot());
  std::vector<Bits> six_four(6, y);
  six_four.insert(six_four.end(), 4, z);
  CHECK(vote(six_four) == BotValue(y));
  std::vector<Bits> mixed{y, B("10")};
  CHECK_THROWS_AS(vote(mixed), InvalidLength);
  CHECK_THROWS_AS(vote(std::span<const Bits>{}), EmptyInput);
}

TEST_CASE("vote threshold is ceil(0.6 n)") {
  for (std::size_t n = 1; n <= 1000; ++n) {
    std::size_t expect = 0;
    while (5 * expect < 3 * n) ++expect;
    CHECK(vote_threshold(n) == expect);
  }
}

TEST_CASE("vote uniqueness over every binary sample list up to length 6") {
  const Bits a = B("0");
  const Bits b = B("1");
  for (std::size_t n = 1; n <= 6; ++n) {
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      std::vector<Bits> samples;
      std::size_t ones = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const bool bit = (mask >> i) & 1U;
        samples.push_back(bit ? b : a);
        ones += bit;
      }
      const bool a_wins = 5 * (n - ones) >= 3 * n;
      const bool b_wins = 5 * ones >= 3 * n;
      CHECK_FALSE((a_wins && b_wins));
      const BotValue r = vote(samples);
      if (a_wins) {
        CHECK(r == BotValue(a));
      } else if (b_wins) {
        CHECK(r == BotValue(b));
      } else {
        CHECK(r.is_bot());
      }
    }
  }
}

TEST_CASE("BotValue text and binary forms") {
  CHECK(BotValue::bot().to_text() == "BOT");
  CHECK(V("10110100").to_text() == "b4");
  CHECK(BotValue::from_text("BOT", 8).is_bot());
  CHECK(BotValue::from_text("b4", 8) == V("10110100"));
  RandomTape tape(5);
  for (int i = 0; i < 100; ++i) {
    const BotValue v = tape.coin() ? BotValue::bot() : BotValue(tape.bits(tape.below(50)));
    CHECK(BotValue::decode(v.encode()) == v);
  }
  CHECK(BotValue::bot().encode() == Bytes{0x00});
  CHECK(V("101").encode() == Bytes{0x01, 0, 0, 0, 3, 0xa0});
  CHECK_THROWS_AS(BotValue::decode(Bytes{0x01, 0, 0, 0, 3, 0xa1}), DecodeError);
  CHECK_THROWS_AS(BotValue::decode(Bytes{0x02}), DecodeError);
  CHECK_THROWS_AS(BotValue::decode(Bytes{}), DecodeError);
}

namespace {

OutputDistribution dist(std::initializer_list<std::pair<const char*, double>> entries) {
  std::vector<OutputDistribution::Entry> e;
  for (const auto& [s, m] : entries) e.push_back({B(s), m});
  return OutputDistribution(std::move(e));
}

std::vector<Bits> bits_list(std::initializer_list<const char*> s) {
  std::vector<Bits> out;
  for (const char* x : s) out.push_back(B(x));
  return out;
}

}  // namespace

TEST_CASE("set_division greedy traces") {
  // Hand traces of the greedy rule in entry order.
  auto four = set_division(dist({{"00", 0.25}, {"01", 0.25}, {"10", 0.25}, {"11", 0.25}}));
  CHECK(four[0] == bits_list({"00", "01"}));
  CHECK(four[1] == bits_list({"10", "11"}));
  CHECK(four[2].empty());

  // 0.49 + 0.02 exceeds 1/2, so c cannot join b's set.
  auto skewed = set_division(dist({{"00", 0.49}, {"01", 0.49}, {"10", 0.02}}));
  CHECK(skewed[0] == bits_list({"00"}));
  CHECK(skewed[1] == bits_list({"01"}));
  CHECK(skewed[2] == bits_list({"10"}));

  auto three = set_division(dist({{"00", 0.4}, {"01", 0.4}, {"10", 0.2}}));
  CHECK(three[0] == bits_list({"00"}));
  CHECK(three[1] == bits_list({"01"}));
  CHECK(three[2] == bits_list({"10"}));

  CHECK_THROWS_AS(set_division(dist({{"0", 0.5}, {"1", 0.5}})), PreconditionViolated);
}

TEST_CASE("output distribution validation") {
  CHECK_THROWS_AS(dist({{"0", 0.6}, {"1", 0.3}}), PreconditionViolated);
  CHECK_THROWS_AS(dist({{"0", 0.5}, {"0", 0.5}}), PreconditionViolated);
  CHECK_THROWS_AS(dist({{"0", 1.2}, {"1", -0.2}}), PreconditionViolated);
}

TEST_CASE("set_division properties on random distributions") {
  RandomTape tape(2024);
  int divided = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 + tape.below(10);
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) total += (x = 0.05 + tape.uniform());
    std::vector<OutputDistribution::Entry> entries;
    for (std::size_t i = 0; i < n; ++i) {
      Bits label(8);
      for (int b = 0; b < 8; ++b) label.set(b, (i >> (7 - b)) & 1U);
      entries.push_back({label, w[i] / total});
    }
    const double biggest = *std::max_element(w.begin(), w.end()) / total;
    if (biggest >= 0.5) continue;
    const OutputDistribution d(entries);
    // Consecutive greedy sets sum to more than 1/2, so three always suffice.
    const SetDivision sets = set_division(d);
    ++divided;
    std::set<Bits> seen;
    std::size_t covered = 0;
    for (const auto& s : sets) {
      double mass = 0.0;
      for (const auto& y : s) {
        CHECK(seen.insert(y).second);
        ++covered;
        for (const auto& e : entries) {
          if (e.value == y) mass += e.mass;
        }
      }
      CHECK(mass <= 0.5 + 1e-9);
    }
    CHECK(covered == n);
  }
  CHECK(divided > 500);
}
