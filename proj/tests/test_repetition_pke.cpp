#include "doctest.h"

#include <cmath>

#include "botsig/errors.hpp"
#include "botsig/repetition_pke.hpp"

using namespace botsig;

TEST_CASE("mock base scheme round-trips when it does not abort") {
  RandomTape tape(1);
  const MockBasePke base(32, 0.0, bytes_from_hex("0a"));
  for (int i = 0; i < 500; ++i) {
    const auto kp = base.keygen(tape);
    const bool bit = tape.coin();
    CHECK(base.decrypt(kp.sk, base.encrypt(kp.pk, bit, tape), tape) == MaybeBit(bit));
  }
  CHECK_THROWS_AS(MockBasePke(32, 1.0, {}), PreconditionViolated);
  CHECK_THROWS_AS(MockBasePke(0, 0.1, {}), PreconditionViolated);
}

TEST_CASE("mock base abort rate") {
  RandomTape tape(2);
  const MockBasePke base(32, 0.3, {});
  const auto kp = base.keygen(tape);
  const auto ct = base.encrypt(kp.pk, true, tape);
  int bots = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const MaybeBit r = base.decrypt(kp.sk, ct, tape);
    if (!r) {
      ++bots;
    } else {
      CHECK(*r);
    }
  }
  CHECK(std::abs(bots / double(n) - 0.3) <= 0.015);
}

TEST_CASE("combiner rule") {
  const std::vector<MaybeBit> ones{true, true, true};
  CHECK(rep_combine(ones) == MaybeBit(true));
  const std::vector<MaybeBit> late{std::nullopt, std::nullopt, false, std::nullopt};
  CHECK(rep_combine(late) == MaybeBit(false));
  const std::vector<MaybeBit> clash{false, true, std::nullopt};
  CHECK_FALSE(rep_combine(clash).has_value());
  const std::vector<MaybeBit> none{std::nullopt, std::nullopt};
  CHECK_FALSE(rep_combine(none).has_value());
}

TEST_CASE("repetition encryption") {
  RandomTape tape(3);
  const MockBasePke base(32, 0.0, {});
  const auto one = rep_keygen(base, 1, tape);
  CHECK(rep_encrypt(base, one, true, tape).size() == 1);
  const auto keys = rep_keygen(base, 8, tape);
  const auto cts = rep_encrypt(base, keys, false, tape);
  CHECK(cts.size() == 8);
  for (std::size_t i = 1; i < cts.size(); ++i) CHECK_FALSE(cts[i] == cts[0]);
  RandomTape a(9);
  RandomTape b(9);
  CHECK(rep_encrypt(base, keys, true, a) == rep_encrypt(base, keys, true, b));
  CHECK(rep_decrypt(base, keys, cts, tape) == MaybeBit(false));
  const std::span<const PkeCiphertext> fewer(cts.data(), 7);
  CHECK_THROWS_AS(rep_decrypt(base, keys, fewer, tape), InvalidLength);
  CHECK_THROWS_AS(rep_keygen(base, 0, tape), PreconditionViolated);
}

TEST_CASE("lifted correctness and disagreement detection") {
  RandomTape tape(4);
  const MockBasePke base(32, 0.3, {});
  const auto keys = rep_keygen(base, 64, tape);
  int failures = 0;
  for (int i = 0; i < 2000; ++i) {
    const bool bit = tape.coin();
    failures += rep_decrypt(base, keys, rep_encrypt(base, keys, bit, tape), tape) != MaybeBit(bit);
  }
  CHECK(failures == 0);

  const MockBasePke exact(32, 0.0, {});
  for (int i = 0; i < 100; ++i) {
    const bool bit = tape.coin();
    auto cts = rep_encrypt(exact, keys, bit, tape);
    cts[tape.below(cts.size())].masked ^= true;
    CHECK_FALSE(rep_decrypt(exact, keys, cts, tape).has_value());
  }
}
