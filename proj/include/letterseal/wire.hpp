#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "letterseal/bytes.hpp"
#include "letterseal/crypto.hpp"
#include "letterseal/error.hpp"

namespace letterseal {

inline constexpr std::uint8_t kVersionV1 = 1;
inline constexpr std::uint8_t kVersionV2 = 2;
inline constexpr std::uint8_t kVersionVDR = 3;

// Layout (big-endian):
//   u8 vers=1 | u8 ctype | salt[8] | u32 kid_s | u32 kid_r | u32 len | ct | tag[16]
struct EnvelopeV1 {
  std::uint8_t vers = kVersionV1;
  std::uint8_t ctype = 0;
  ByteArray<8> salt{};
  Bytes ciphertext;
  ByteArray<16> tag{};
  std::uint32_t kid_sender = 0;
  std::uint32_t kid_receiver = 0;

  friend bool operator==(const EnvelopeV1&, const EnvelopeV1&) = default;
};

//   u8 vers=2 | u8 ctype | salt[16] | u32 kid_s | u32 kid_r | nonce_material[8]
//   | u16 len | sid | u16 len | rid | u32 len | ct
struct EnvelopeV2 {
  std::uint8_t vers = kVersionV2;
  std::uint8_t ctype = 0;
  ByteArray<16> salt{};
  Bytes ciphertext;
  ByteArray<8> nonce_material{};
  std::uint32_t kid_sender = 0;
  std::uint32_t kid_receiver = 0;
  std::string sid;
  std::string rid;

  friend bool operator==(const EnvelopeV2&, const EnvelopeV2&) = default;
};

//   u8 vers=3 | u8 ctype | u32 kid_s | u32 kid_r | eph_pub[32] | u32 j
//   | nonce_material[8] | u32 len | ct
// The asymmetric index i is not a separate field: it is nonce_material[0..4].
struct EnvelopeVDR {
  std::uint8_t vers = kVersionVDR;
  std::uint8_t ctype = 0;
  Bytes ciphertext;
  ByteArray<8> nonce_material{};
  std::uint32_t kid_sender = 0;
  std::uint32_t kid_receiver = 0;
  GroupElement eph_pub;
  std::uint32_t j_index = 0;

  std::uint32_t i_index() const { return load_be32(nonce_material); }
  friend bool operator==(const EnvelopeVDR&, const EnvelopeVDR&) = default;
};

using Envelope = std::variant<EnvelopeV1, EnvelopeV2, EnvelopeVDR>;

Bytes encode_envelope(const EnvelopeV1& e);
Bytes encode_envelope(const EnvelopeV2& e);
Bytes encode_envelope(const EnvelopeVDR& e);
Bytes encode_envelope(const Envelope& e);

// Dispatches on the version byte; throws ParseError naming the bad field.
Envelope decode_envelope(ByteView data);

// Decodes and requires a specific variant.
template <typename T>
T decode_as(ByteView data) {
  auto env = decode_envelope(data);
  if (auto* p = std::get_if<T>(&env)) return std::move(*p);
  throw ParseError("vers", "unexpected envelope version");
}

// rid || sid as u16-length-prefixed strings, then kid_s, kid_r, vers, ctype.
Bytes v2_associated_data(const EnvelopeV2& e);
// kid_s || kid_r || vers || ctype || eph_pub || be32(j)
Bytes vdr_associated_data(const EnvelopeVDR& e);

}  // namespace letterseal
