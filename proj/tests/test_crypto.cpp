#include <catch_amalgamated.hpp>

#include "letterseal/crypto.hpp"
#include "letterseal/error.hpp"

using namespace letterseal;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("dh agrees in both directions and keygen clamps") {
  SeededRandom rng(1);
  const auto a = dh_keygen(rng);
  const auto b = dh_keygen(rng);
  CHECK(dh(a.secret, b.pub) == dh(b.secret, a.pub));
  CHECK(dh_to_public(a.secret) == a.pub);
  CHECK((a.secret.bytes[0] & 7) == 0);
  CHECK((a.secret.bytes[31] & 0x80) == 0);
  CHECK((a.secret.bytes[31] & 0x40) != 0);
}

TEST_CASE("all-zero dh output is refused") {
  SeededRandom rng(2);
  const auto a = dh_keygen(rng);
  CHECK(code_of([&] { (void)dh(a.secret, GroupElement{}); }) == ErrorCode::LowOrderPoint);
  ByteArray<32> one{};
  one[0] = 1;
  CHECK(code_of([&] { (void)dh(a.secret, GroupElement(one)); }) == ErrorCode::LowOrderPoint);
}

TEST_CASE("kdf_root splits a 64-byte HKDF output") {
  const Bytes ikm(32, 0x11), salt(32, 0x22);
  const auto okm = hkdf_sha256(salt, ikm, as_bytes(kRootLabel), 64);
  const auto step = kdf_root(ikm, salt);
  CHECK(Bytes(step.root.view().begin(), step.root.view().end()) == Bytes(okm.begin(), okm.begin() + 32));
  CHECK(Bytes(step.chain.view().begin(), step.chain.view().end()) == Bytes(okm.begin() + 32, okm.end()));
  CHECK(code_of([&] { (void)kdf_root({}, salt); }) == ErrorCode::InvalidLength);
}

TEST_CASE("kdf_chain separates message and chain keys") {
  SymmetricKey ck(ByteArray<32>{});
  for (int k = 0; k < 20; ++k) {
    const auto s = kdf_chain(ck);
    REQUIRE(s.message_key != s.next_chain);
    REQUIRE(s.next_chain != ck);
    ck = s.next_chain;
  }
}

TEST_CASE("aead round trip and tamper detection") {
  SeededRandom rng(3);
  const SymmetricKey key(rng.draw<32>());
  const auto nonce = AeadNonce::from_material(rng.draw<8>());
  const auto ad = as_bytes("header");
  const Bytes msg{'h', 'i', '!'};
  auto sealed = aead_seal(key, nonce, msg, ad);
  CHECK(sealed.size() == msg.size() + 16);
  CHECK(aead_open(key, nonce, sealed, ad) == msg);

  auto flipped = sealed;
  flipped[0] ^= 1;
  CHECK(code_of([&] { (void)aead_open(key, nonce, flipped, ad); }) == ErrorCode::AuthFailure);
  CHECK(code_of([&] { (void)aead_open(key, nonce, sealed, as_bytes("headeR")); }) == ErrorCode::AuthFailure);
  CHECK(code_of([&] { (void)aead_open(key, nonce, Bytes(15), ad); }) == ErrorCode::AuthFailure);
  CHECK(aead_open(key, nonce, aead_seal(key, nonce, {}, {}), {}).empty());
}

TEST_CASE("gcm nonce is material followed by four zero bytes") {
  const ByteArray<8> m{1, 2, 3, 4, 5, 6, 7, 8};
  const auto n = AeadNonce::from_material(m);
  CHECK(to_hex(n.view()) == "010203040506070800000000");
}

TEST_CASE("cbc keeps PKCS#7 padding honest") {
  SeededRandom rng(4);
  const SymmetricKey key(rng.draw<32>());
  const auto iv = rng.draw<16>();
  for (std::size_t len : {0u, 1u, 15u, 16u, 17u, 100u}) {
    Bytes m(len, 0x5a);
    auto ct = cbc_encrypt(key, iv, m);
    REQUIRE(ct.size() == (len / 16 + 1) * 16);
    REQUIRE(cbc_decrypt(key, iv, ct) == m);
  }
  auto ct = cbc_encrypt(key, iv, Bytes(5));
  ct.back() ^= 0x40;
  CHECK(code_of([&] { (void)cbc_decrypt(key, iv, ct); }) == ErrorCode::PaddingError);
  CHECK(code_of([&] { (void)cbc_decrypt(key, iv, Bytes(15)); }) == ErrorCode::PaddingError);
}

TEST_CASE("ecb takes exactly one block") {
  const SymmetricKey key{};
  CHECK(code_of([&] { (void)ecb_encrypt_block(key, Bytes(15)); }) == ErrorCode::InvalidLength);
  CHECK_NOTHROW(ecb_encrypt_block(key, Bytes(16)));
}

TEST_CASE("operation counters track each primitive class") {
  SeededRandom rng(5);
  const auto before = op_counters();
  const auto a = dh_keygen(rng);
  const auto b = dh_keygen(rng);
  (void)dh(a.secret, b.pub);
  (void)kdf_chain(SymmetricKey{});
  (void)kdf_root(Bytes(32, 1), Bytes(32));
  const auto k = SymmetricKey(rng.draw<32>());
  const auto n = AeadNonce::from_material(rng.draw<8>());
  (void)aead_open(k, n, aead_seal(k, n, Bytes(3), {}), {});
  const auto d = op_counters() - before;
  CHECK(d.dh_keygen == 2);
  CHECK(d.dh_agree == 1);
  CHECK(d.dh_total() == 3);
  CHECK(d.kdf == 2);
  CHECK(d.aead == 2);
}
