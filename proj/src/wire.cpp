#include "letterseal/wire.hpp"

#include "letterseal/codec.hpp"

namespace letterseal {

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidLength, what);
}

EnvelopeV1 read_v1(Reader& r) {
  EnvelopeV1 e;
  e.ctype = r.u8("ctype");
  e.salt = r.array<8>("salt");
  e.kid_sender = r.u32("kid_sender");
  e.kid_receiver = r.u32("kid_receiver");
  e.ciphertext = r.blob32("ciphertext");
  e.tag = r.array<16>("tag");
  return e;
}

EnvelopeV2 read_v2(Reader& r) {
  EnvelopeV2 e;
  e.ctype = r.u8("ctype");
  e.salt = r.array<16>("salt");
  e.kid_sender = r.u32("kid_sender");
  e.kid_receiver = r.u32("kid_receiver");
  e.nonce_material = r.array<8>("nonce_material");
  e.sid = r.str16("sid");
  e.rid = r.str16("rid");
  e.ciphertext = r.blob32("ciphertext");
  if (e.ciphertext.size() < 16) throw ParseError("ciphertext", "shorter than the GCM tag");
  return e;
}

EnvelopeVDR read_vdr(Reader& r) {
  EnvelopeVDR e;
  e.ctype = r.u8("ctype");
  e.kid_sender = r.u32("kid_sender");
  e.kid_receiver = r.u32("kid_receiver");
  e.eph_pub = GroupElement(r.array<32>("eph_pub"));
  e.j_index = r.u32("j_index");
  e.nonce_material = r.array<8>("nonce_material");
  e.ciphertext = r.blob32("ciphertext");
  if (e.ciphertext.size() < 16) throw ParseError("ciphertext", "shorter than the GCM tag");
  return e;
}

}  // namespace

Bytes encode_envelope(const EnvelopeV1& e) {
  require(e.vers == kVersionV1, "EnvelopeV1.vers must be 1");
  Bytes out;
  out.reserve(42 + e.ciphertext.size());
  out.push_back(e.vers);
  out.push_back(e.ctype);
  append(out, e.salt);
  put_u32(out, e.kid_sender);
  put_u32(out, e.kid_receiver);
  put_blob32(out, e.ciphertext, "ciphertext");
  append(out, e.tag);
  return out;
}

Bytes encode_envelope(const EnvelopeV2& e) {
  require(e.vers == kVersionV2, "EnvelopeV2.vers must be 2");
  require(e.ciphertext.size() >= 16, "EnvelopeV2.ciphertext shorter than tag");
  Bytes out;
  out.reserve(44 + e.sid.size() + e.rid.size() + e.ciphertext.size());
  out.push_back(e.vers);
  out.push_back(e.ctype);
  append(out, e.salt);
  put_u32(out, e.kid_sender);
  put_u32(out, e.kid_receiver);
  append(out, e.nonce_material);
  put_str16(out, e.sid, "sid");
  put_str16(out, e.rid, "rid");
  put_blob32(out, e.ciphertext, "ciphertext");
  return out;
}

Bytes encode_envelope(const EnvelopeVDR& e) {
  require(e.vers == kVersionVDR, "EnvelopeVDR.vers must be 3");
  require(e.ciphertext.size() >= 16, "EnvelopeVDR.ciphertext shorter than tag");
  Bytes out;
  out.reserve(58 + e.ciphertext.size());
  out.push_back(e.vers);
  out.push_back(e.ctype);
  put_u32(out, e.kid_sender);
  put_u32(out, e.kid_receiver);
  append(out, e.eph_pub.view());
  put_u32(out, e.j_index);
  append(out, e.nonce_material);
  put_blob32(out, e.ciphertext, "ciphertext");
  return out;
}

Bytes encode_envelope(const Envelope& e) {
  return std::visit([](const auto& x) { return encode_envelope(x); }, e);
}

Envelope decode_envelope(ByteView data) {
  Reader r(data);
  const auto vers = r.u8("vers");
  Envelope out;
  switch (vers) {
    case kVersionV1: out = read_v1(r); break;
    case kVersionV2: out = read_v2(r); break;
    case kVersionVDR: out = read_vdr(r); break;
    default: throw ParseError("vers", "unknown version " + std::to_string(vers));
  }
  r.finish("envelope");
  return out;
}

Bytes v2_associated_data(const EnvelopeV2& e) {
  Bytes ad;
  ad.reserve(14 + e.sid.size() + e.rid.size());
  put_str16(ad, e.rid, "rid");
  put_str16(ad, e.sid, "sid");
  put_u32(ad, e.kid_sender);
  put_u32(ad, e.kid_receiver);
  ad.push_back(e.vers);
  ad.push_back(e.ctype);
  return ad;
}

Bytes vdr_associated_data(const EnvelopeVDR& e) {
  Bytes ad;
  ad.reserve(46);
  put_u32(ad, e.kid_sender);
  put_u32(ad, e.kid_receiver);
  ad.push_back(e.vers);
  ad.push_back(e.ctype);
  append(ad, e.eph_pub.view());
  put_u32(ad, e.j_index);
  return ad;
}

}  // namespace letterseal
