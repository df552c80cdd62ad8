#pragma once

#include <cstdint>
#include <string>

#include "letterseal/crypto.hpp"
#include "letterseal/wire.hpp"

namespace letterseal {

struct V2Identity {
  std::string sid;  // own user id
  std::string rid;  // peer user id
  std::uint32_t kid_self = 0;
  std::uint32_t kid_peer = 0;
};

struct SessionV2 {
  SharedSecret pms;
  std::uint32_t ctr = 0;
  std::uint32_t kid_self = 0;
  std::uint32_t kid_peer = 0;
  std::string sid;
  std::string rid;
  std::uint8_t vers = kVersionV2;

  friend bool operator==(const SessionV2&, const SessionV2&) = default;
};

SessionV2 v2_establish(const GroupScalar& self_secret, const GroupElement& peer_public, const V2Identity& ids);
SymmetricKey v2_derive_key(const SharedSecret& pms, ByteView salt16);

struct V2Nonce {
  AeadNonce nonce;
  ByteArray<8> material{};
};
// material = be32(ctr) || rand32; nonce = material || 0^32.
V2Nonce v2_build_nonce(std::uint32_t ctr, const ByteArray<4>& rand32);

// Encryption result together with what the MSKE harness logs for the stage.
struct V2Sealed {
  EnvelopeV2 envelope;
  SymmetricKey key;
  Bytes randomness;  // salt || rand32
};

struct V2Opened {
  Bytes plaintext;
  SymmetricKey key;
};

V2Sealed v2_seal(SessionV2& s, std::uint8_t ctype, ByteView m, RandomSource& rng);
V2Opened v2_open(const SessionV2& s, const EnvelopeV2& e);

EnvelopeV2 v2_encrypt(SessionV2& s, std::uint8_t ctype, ByteView m, RandomSource& rng);
// Accepts repeated envelopes: v2 keeps no receive-side state.
Bytes v2_decrypt(const SessionV2& s, const EnvelopeV2& e);

Bytes v2_export_session(const SessionV2& s);
SessionV2 v2_import_session(ByteView snapshot);

}  // namespace letterseal
