#include "doctest.h"

#include "botsig/codec.hpp"
#include "botsig/profile.hpp"
#include "test_util.hpp"

using namespace botsig;

namespace {

Profile small() { return builtin_profile("desk-small"); }

template <class T>
void round_trip(const T& x) {
  const Bytes enc = encode_value(x);
  CHECK(decode_value<T>(enc) == x);
  Bytes longer = enc;
  longer.push_back(0);
  CHECK_THROWS_AS(decode_value<T>(longer), DecodeError);
  if (!enc.empty()) {
    Bytes shorter(enc.begin(), enc.end() - 1);
    CHECK_THROWS_AS(decode_value<T>(shorter), DecodeError);
  }
}

}  // namespace

TEST_CASE("primitive field encodings") {
  CHECK(encode_value(test::B("101")) == Bytes{0, 0, 0, 3, 0xa0});
  CHECK(encode_value(std::optional<Bits>{}) == Bytes{0});
  CHECK(encode_value(std::size_t{258}) == Bytes{0, 0, 0, 0, 0, 0, 1, 2});
  CHECK(encode_value(BotValue::bot()) == Bytes{0, 0, 0, 1, 0});
  CHECK_THROWS_AS(decode_value<Bits>(Bytes{0, 0, 0, 3, 0xa1}), DecodeError);
  CHECK_THROWS_AS(decode_value<std::optional<Bits>>(Bytes{2}), DecodeError);
  // A huge count must not allocate before failing.
  CHECK_THROWS_AS(decode_value<std::vector<Bits>>(Bytes{0xff, 0xff, 0xff, 0xff}), DecodeError);
}

TEST_CASE("every scheme artifact round-trips") {
  RandomTape tape(1);
  const Profile p = small();

  const OmsScheme oms(p.oms());
  auto oms_kp = oms.keygen(tape);
  round_trip(oms_kp.sk);
  round_trip(oms_kp.vk);
  round_trip(*oms.sign(oms_kp.sk, tape.bits(oms.message_bits()), tape));

  const Oms2Scheme oms2(p.oms2());
  auto kp2 = oms2.keygen(tape);
  round_trip(kp2.sk);
  round_trip(kp2.vk);
  round_trip(oms2.sign(kp2.sk, tape.bits(oms2.message_bits()), tape));

  const StatefulScheme stateful(p.tree());
  auto skp = stateful.keygen(tape);
  const auto ssig = stateful.sign(skp.sk, tape.bits(4), tape);
  round_trip(skp.sk);
  round_trip(ssig);

  const StatelessScheme stateless(p.stateless());
  auto lkp = stateless.keygen(tape);
  round_trip(lkp.sk);
  round_trip(stateless.sign(lkp.sk, tape.bits(4), tape));

  const AmplifiedSuf<Oms2Scheme> suf(Oms2Scheme(p.oms2()), 2);
  auto akp = suf.keygen(tape);
  round_trip(akp.sk);
  round_trip(akp.vk);
  round_trip(suf.sign(akp.sk, tape.bits(p.oms2_msg_bits), tape));

  const AmplifiedUf<Oms2Scheme> uf(Oms2Scheme(p.oms2()), 4);
  auto ukp = uf.keygen(tape);
  round_trip(uf.sign(ukp.sk, tape.bits(p.oms2_msg_bits), tape));
  round_trip(std::optional<AuthTreeSignature>{});
}

TEST_CASE("envelope") {
  Envelope env{SchemeTag::Stateless, ArtifactKind::VerifyKey, R"({"name":"x"})", Bytes{1, 2, 3}};
  const Bytes enc = encode_envelope(env);
  CHECK(std::string(enc.begin(), enc.begin() + 5) == "BSIG1");
  CHECK(enc[5] == 4);
  CHECK(enc[6] == 2);
  CHECK(decode_envelope(enc) == env);
  Bytes bad = enc;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_envelope(bad), DecodeError);
  bad = enc;
  bad[5] = 9;
  CHECK_THROWS_AS(decode_envelope(bad), DecodeError);
  bad = enc;
  bad.pop_back();
  CHECK_THROWS_AS(decode_envelope(bad), DecodeError);
}

TEST_CASE("scheme names") {
  for (auto tag : {SchemeTag::Oms, SchemeTag::Oms2, SchemeTag::Stateful, SchemeTag::Stateless,
                   SchemeTag::AmplifiedSuf, SchemeTag::AmplifiedUf}) {
    CHECK(scheme_from_name(scheme_name(tag)) == tag);
  }
  CHECK_THROWS_AS(scheme_from_name("rsa"), PreconditionViolated);
}

TEST_CASE("JSON debug mirror") {
  RandomTape tape(2);
  const Oms2Scheme oms2(small().oms2());
  auto kp = oms2.keygen(tape);
  const auto sig = oms2.sign(kp.sk, tape.bits(oms2.message_bits()), tape);
  const nlohmann::json j = to_debug_json(sig);
  CHECK(j.at("hash_key") == sig->hash_key.to_hex());
  CHECK(j.at("inner").at("preimages").size() == sig->inner.preimages.size());
  const nlohmann::json vk = to_debug_json(kp.vk);
  CHECK(vk.at("images")[0][0].is_string());
  CHECK(to_debug_json(std::optional<Oms2Signature>{}).is_null());
  CHECK(to_debug_json(BotValue::bot()) == "BOT");
}
