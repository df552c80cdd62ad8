#pragma once

#include <cstdint>

#include "letterseal/crypto.hpp"
#include "letterseal/wire.hpp"

namespace letterseal {

struct SessionV1 {
  SharedSecret pms;
  std::uint32_t kid_self = 0;
  std::uint32_t kid_peer = 0;
};

SessionV1 v1_establish(const GroupScalar& self_secret, const GroupElement& peer_public, std::uint32_t kid_self,
                       std::uint32_t kid_peer);

struct V1Keys {
  SymmetricKey key;
  ByteArray<16> iv{};
};

// k_e = SHA-256(pms || salt || "Key"); iv folds SHA-256(pms || salt || "IV") in half.
V1Keys v1_derive(const SharedSecret& pms, ByteView salt8);
ByteArray<16> v1_mac(const SymmetricKey& k_e, ByteView ciphertext);

EnvelopeV1 v1_encrypt(const SessionV1& s, std::uint8_t ctype, ByteView m, RandomSource& rng);
// Verifies the tag before touching the CBC layer. No replay state.
Bytes v1_decrypt(const SessionV1& s, const EnvelopeV1& e);

}  // namespace letterseal
