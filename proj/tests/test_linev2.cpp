#include <catch_amalgamated.hpp>

#include "letterseal/error.hpp"
#include "letterseal/linev2.hpp"

using namespace letterseal;

namespace {

struct Pair {
  SessionV2 alice, bob;
};

Pair pair(std::uint64_t seed) {
  SeededRandom rng(seed);
  const auto a = dh_keygen(rng);
  const auto b = dh_keygen(rng);
  return {v2_establish(a.secret, b.pub, V2Identity{"alice", "bob", 1, 2}),
          v2_establish(b.secret, a.pub, V2Identity{"bob", "alice", 2, 1})};
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("v2 peers share the pre-master secret") {
  auto p = pair(1);
  CHECK(p.alice.pms == p.bob.pms);
}

TEST_CASE("v2 counter lands in the nonce and advances") {
  auto p = pair(2);
  SeededRandom rng(20);
  for (std::uint32_t k = 0; k < 6; ++k) {
    const auto e = v2_encrypt(p.alice, 0, Bytes{1, 2}, rng);
    REQUIRE(load_be32(e.nonce_material) == k);
    REQUIRE(v2_decrypt(p.bob, e) == Bytes{1, 2});
  }
  CHECK(p.alice.ctr == 6);
  CHECK(p.bob.ctr == 0);
}

TEST_CASE("v2 nonce layout") {
  const auto n = v2_build_nonce(0x01020304, {0xa, 0xb, 0xc, 0xd});
  CHECK(to_hex(n.material) == "010203040a0b0c0d");
  CHECK(to_hex(n.nonce.view()) == "010203040a0b0c0d00000000");
}

TEST_CASE("v2 binds identities and type into the tag") {
  auto p = pair(3);
  SeededRandom rng(21);
  const auto e = v2_encrypt(p.alice, 4, Bytes(10, 1), rng);
  auto t = e;
  t.ctype = 5;
  CHECK(code_of([&] { (void)v2_decrypt(p.bob, t); }) == ErrorCode::AuthFailure);
  t = e;
  t.sid = "mallory";
  CHECK(code_of([&] { (void)v2_decrypt(p.bob, t); }) == ErrorCode::AuthFailure);
  t = e;
  t.salt[3] ^= 1;
  CHECK(code_of([&] { (void)v2_decrypt(p.bob, t); }) == ErrorCode::AuthFailure);
  t = e;
  t.kid_receiver = 3;
  CHECK(code_of([&] { (void)v2_decrypt(p.bob, t); }) == ErrorCode::KidMismatch);
}

TEST_CASE("v2 accepts the same envelope twice") {
  auto p = pair(4);
  SeededRandom rng(22);
  const auto e = v2_encrypt(p.alice, 0, Bytes{9}, rng);
  CHECK(v2_decrypt(p.bob, e) == Bytes{9});
  CHECK(v2_decrypt(p.bob, e) == Bytes{9});
}

TEST_CASE("v2 seal reports the stage key and randomness") {
  auto p = pair(5);
  SeededRandom rng(23);
  const auto s = v2_seal(p.alice, 0, Bytes{1}, rng);
  CHECK(s.randomness.size() == 20);
  CHECK(s.key == v2_derive_key(p.alice.pms, ByteView(s.randomness).first(16)));
  CHECK(v2_open(p.bob, s.envelope).key == s.key);
}

TEST_CASE("v2 counter exhaustion is an error") {
  auto p = pair(6);
  p.alice.ctr = UINT32_MAX;
  SeededRandom rng(24);
  CHECK(code_of([&] { (void)v2_encrypt(p.alice, 0, Bytes{}, rng); }) == ErrorCode::CounterExhausted);
}

TEST_CASE("v2 session snapshots round-trip") {
  auto p = pair(7);
  p.alice.ctr = 41;
  CHECK(v2_import_session(v2_export_session(p.alice)) == p.alice);
  auto snap = v2_export_session(p.alice);
  snap.pop_back();
  CHECK_THROWS_AS(v2_import_session(snap), ParseError);
}

TEST_CASE("v2 derive needs a 16-byte salt") {
  CHECK(code_of([] { (void)v2_derive_key(SharedSecret{}, Bytes(8)); }) == ErrorCode::InvalidLength);
}
