#include <catch_amalgamated.hpp>

#include "letterseal/error.hpp"
#include "letterseal/linev1.hpp"

using namespace letterseal;

namespace {

struct Pair {
  SessionV1 alice, bob;
};

Pair pair(std::uint64_t seed) {
  SeededRandom rng(seed);
  const auto a = dh_keygen(rng);
  const auto b = dh_keygen(rng);
  return {v1_establish(a.secret, b.pub, 1, 2), v1_establish(b.secret, a.pub, 2, 1)};
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

TEST_CASE("v1 round trip in both directions") {
  auto p = pair(1);
  SeededRandom rng(10);
  for (std::size_t len : {0u, 1u, 16u, 1000u}) {
    const Bytes m(len, 0x41);
    CHECK(v1_decrypt(p.bob, v1_encrypt(p.alice, 0, m, rng)) == m);
    CHECK(v1_decrypt(p.alice, v1_encrypt(p.bob, 0, m, rng)) == m);
  }
}

TEST_CASE("v1 derives per-message keys from the salt") {
  const SharedSecret pms(ByteArray<32>{7});
  const Bytes s1(8, 1), s2(8, 2);
  CHECK(v1_derive(pms, s1).key != v1_derive(pms, s2).key);
  CHECK(v1_derive(pms, s1).key == v1_derive(pms, s1).key);
  CHECK_THROWS_AS(v1_derive(pms, Bytes(7)), Error);
}

TEST_CASE("v1 checks the MAC before decrypting") {
  auto p = pair(2);
  SeededRandom rng(11);
  auto e = v1_encrypt(p.alice, 0, Bytes(40, 3), rng);
  auto bad_tag = e;
  bad_tag.tag[0] ^= 1;
  CHECK(code_of([&] { (void)v1_decrypt(p.bob, bad_tag); }) == ErrorCode::MacFailure);
  auto bad_ct = e;
  bad_ct.ciphertext[5] ^= 1;
  CHECK(code_of([&] { (void)v1_decrypt(p.bob, bad_ct); }) == ErrorCode::MacFailure);
  auto bad_salt = e;
  bad_salt.salt[0] ^= 1;
  CHECK(code_of([&] { (void)v1_decrypt(p.bob, bad_salt); }) == ErrorCode::MacFailure);
}

TEST_CASE("v1 refuses envelopes addressed elsewhere") {
  auto p = pair(3);
  SeededRandom rng(12);
  auto e = v1_encrypt(p.alice, 0, Bytes(4), rng);
  e.kid_receiver = 99;
  CHECK(code_of([&] { (void)v1_decrypt(p.bob, e); }) == ErrorCode::KidMismatch);
}

TEST_CASE("v1 encryption is deterministic given the salt") {
  auto p = pair(4);
  FixedRandom a(Bytes(8, 9)), b(Bytes(8, 9));
  const auto e1 = v1_encrypt(p.alice, 0, Bytes(32, 1), a);
  const auto e2 = v1_encrypt(p.alice, 0, Bytes(32, 1), b);
  CHECK(e1 == e2);
}
