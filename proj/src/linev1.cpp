#include "letterseal/linev1.hpp"

#include <openssl/crypto.h>

#include "letterseal/error.hpp"

namespace letterseal {

namespace {

Digest labelled_hash(const SharedSecret& pms, ByteView salt, std::string_view label) {
  Bytes in;
  in.reserve(32 + salt.size() + label.size());
  append(in, pms.view());
  append(in, salt);
  append(in, as_bytes(label));
  auto d = hash(in);
  wipe(in);
  return d;
}

ByteArray<16> fold(const Digest& d) {
  ByteArray<16> out;
  for (std::size_t i = 0; i < 16; ++i) out[i] = d.bytes[i] ^ d.bytes[16 + i];
  return out;
}

}  // namespace

SessionV1 v1_establish(const GroupScalar& self_secret, const GroupElement& peer_public, std::uint32_t kid_self,
                       std::uint32_t kid_peer) {
  return {dh(self_secret, peer_public), kid_self, kid_peer};
}

V1Keys v1_derive(const SharedSecret& pms, ByteView salt8) {
  if (salt8.size() != 8) fail(ErrorCode::InvalidLength, "v1 salt must be 8 bytes");
  count_kdf();
  return {SymmetricKey(labelled_hash(pms, salt8, "Key").bytes), fold(labelled_hash(pms, salt8, "IV"))};
}

ByteArray<16> v1_mac(const SymmetricKey& k_e, ByteView ciphertext) {
  return ecb_encrypt_block(k_e, fold(hash(ciphertext)));
}

EnvelopeV1 v1_encrypt(const SessionV1& s, std::uint8_t ctype, ByteView m, RandomSource& rng) {
  EnvelopeV1 e;
  e.ctype = ctype;
  e.salt = rng.draw<8>();
  e.kid_sender = s.kid_self;
  e.kid_receiver = s.kid_peer;
  const auto keys = v1_derive(s.pms, e.salt);
  e.ciphertext = cbc_encrypt(keys.key, keys.iv, m);
  e.tag = v1_mac(keys.key, e.ciphertext);
  return e;
}

Bytes v1_decrypt(const SessionV1& s, const EnvelopeV1& e) {
  if (e.kid_receiver != s.kid_self) fail(ErrorCode::KidMismatch, "envelope is addressed to another key");
  const auto keys = v1_derive(s.pms, e.salt);
  const auto expected = v1_mac(keys.key, e.ciphertext);
  if (CRYPTO_memcmp(expected.data(), e.tag.data(), expected.size()) != 0) {
    fail(ErrorCode::MacFailure, "v1 tag mismatch");
  }
  return cbc_decrypt(keys.key, keys.iv, e.ciphertext);
}

}  // namespace letterseal
