#include "letterseal/linev2.hpp"

#include <limits>

#include "letterseal/codec.hpp"
#include "letterseal/error.hpp"

namespace letterseal {

namespace {
constexpr std::uint8_t kSnapshotVersion = 1;
}

SessionV2 v2_establish(const GroupScalar& self_secret, const GroupElement& peer_public, const V2Identity& ids) {
  SessionV2 s;
  s.pms = dh(self_secret, peer_public);
  s.kid_self = ids.kid_self;
  s.kid_peer = ids.kid_peer;
  s.sid = ids.sid;
  s.rid = ids.rid;
  return s;
}

SymmetricKey v2_derive_key(const SharedSecret& pms, ByteView salt16) {
  if (salt16.size() != 16) fail(ErrorCode::InvalidLength, "v2 salt must be 16 bytes");
  Bytes in;
  in.reserve(51);
  append(in, pms.view());
  append(in, salt16);
  append(in, as_bytes("Key"));
  SymmetricKey k(hash(in).bytes);
  wipe(in);
  count_kdf();
  return k;
}

V2Nonce v2_build_nonce(std::uint32_t ctr, const ByteArray<4>& rand32) {
  ByteArray<8> material{};
  for (int i = 0; i < 4; ++i) material[i] = static_cast<std::uint8_t>(ctr >> (24 - 8 * i));
  std::copy(rand32.begin(), rand32.end(), material.begin() + 4);
  return {AeadNonce::from_material(material), material};
}

V2Sealed v2_seal(SessionV2& s, std::uint8_t ctype, ByteView m, RandomSource& rng) {
  if (s.ctr == std::numeric_limits<std::uint32_t>::max()) fail(ErrorCode::CounterExhausted, "v2 send counter");
  V2Sealed out;
  auto& e = out.envelope;
  e.vers = s.vers;
  e.ctype = ctype;
  e.salt = rng.draw<16>();
  const auto rand32 = rng.draw<4>();
  const auto n = v2_build_nonce(s.ctr, rand32);
  e.nonce_material = n.material;
  e.kid_sender = s.kid_self;
  e.kid_receiver = s.kid_peer;
  e.sid = s.sid;
  e.rid = s.rid;
  out.key = v2_derive_key(s.pms, e.salt);
  e.ciphertext = aead_seal(out.key, n.nonce, m, v2_associated_data(e));
  out.randomness.assign(e.salt.begin(), e.salt.end());
  append(out.randomness, rand32);
  ++s.ctr;
  return out;
}

V2Opened v2_open(const SessionV2& s, const EnvelopeV2& e) {
  if (e.kid_receiver != s.kid_self) fail(ErrorCode::KidMismatch, "envelope is addressed to another key");
  V2Opened out;
  out.key = v2_derive_key(s.pms, e.salt);
  out.plaintext = aead_open(out.key, AeadNonce::from_material(e.nonce_material), e.ciphertext, v2_associated_data(e));
  return out;
}

EnvelopeV2 v2_encrypt(SessionV2& s, std::uint8_t ctype, ByteView m, RandomSource& rng) {
  return v2_seal(s, ctype, m, rng).envelope;
}

Bytes v2_decrypt(const SessionV2& s, const EnvelopeV2& e) { return v2_open(s, e).plaintext; }

Bytes v2_export_session(const SessionV2& s) {
  Bytes out{kSnapshotVersion, s.vers};
  append(out, s.pms.view());
  put_u32(out, s.ctr);
  put_u32(out, s.kid_self);
  put_u32(out, s.kid_peer);
  put_str16(out, s.sid, "sid");
  put_str16(out, s.rid, "rid");
  return out;
}

SessionV2 v2_import_session(ByteView snapshot) {
  Reader r(snapshot);
  if (r.u8("snapshot.version") != kSnapshotVersion) throw ParseError("snapshot.version", "unsupported");
  SessionV2 s;
  s.vers = r.u8("vers");
  s.pms = SharedSecret(r.array<32>("pms"));
  s.ctr = r.u32("ctr");
  s.kid_self = r.u32("kid_self");
  s.kid_peer = r.u32("kid_peer");
  s.sid = r.str16("sid");
  s.rid = r.str16("rid");
  r.finish("snapshot");
  return s;
}

}  // namespace letterseal
