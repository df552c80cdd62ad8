#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "letterseal/bytes.hpp"
#include "letterseal/wire.hpp"

namespace letterseal {

// Header fields shared by user and bot packets (Thrift-style message record).
struct PacketHeader {
  std::int64_t from = 0;
  std::int64_t to = 0;
  std::uint8_t to_type = 0;
  std::int64_t id = 0;
  std::int64_t created_time = 0;    // ms
  std::int64_t delivered_time = 0;  // ms
  bool has_content = false;
  std::uint8_t content_type = 0;
  std::int64_t session_id = 0;

  friend bool operator==(const PacketHeader&, const PacketHeader&) = default;
};

struct E2eeMetadata {
  std::uint8_t e2ee_version = 0;
  std::int64_t seq = 0;
  friend bool operator==(const E2eeMetadata&, const E2eeMetadata&) = default;
};

struct BotMetadata {
  Bytes bot_tag2;
  std::string bot_origin;
  bool bot_check = false;
  std::string bot_track;
  friend bool operator==(const BotMetadata&, const BotMetadata&) = default;
};

// A decoded packet. Sections are optional so malformed mixes stay
// representable and can be classified as Ambiguous.
struct Packet {
  PacketHeader header;
  std::optional<E2eeMetadata> e2ee;
  std::optional<BotMetadata> bot;
  std::optional<std::vector<Bytes>> chunks;
  std::optional<std::string> text;

  friend bool operator==(const Packet&, const Packet&) = default;
};

struct PacketMeta {
  PacketHeader header;
  std::uint8_t e2ee_version = 0;
  std::int64_t seq = 0;
  std::vector<Bytes> chunks;
};

struct BotPacket {
  PacketHeader header;
  Bytes bot_tag2;
  std::string bot_origin;
  bool bot_check = false;
  std::string bot_track;
  std::string text;
};

Packet to_packet(const PacketMeta& p);
Packet to_packet(const BotPacket& p);

// Layout: "LP" | u8 1 | header | u8 nsections | { u8 tag | u32 len | body }*
Bytes encode_packet(const Packet& p);
Packet decode_packet(ByteView data);
bool looks_like_packet(ByteView data);

enum class PacketClass { UserE2EE, BotPlaintext, Ambiguous };
std::string_view packet_class_name(PacketClass c);
PacketClass classify_packet(const Packet& p);

struct ChunkFields {
  ByteArray<16> salt{};
  Bytes ciphertext;
  ByteArray<8> nonce_material{};
  std::uint32_t kid_a = 0;
  std::uint32_t kid_b = 0;
};

// Positional: salt, ciphertext, ctr||rand, kid_A, kid_B.
ChunkFields parse_chunks(std::span<const Bytes> chunks);
std::vector<Bytes> make_chunks(const EnvelopeV2& e);
EnvelopeV2 envelope_from_chunks(const ChunkFields& c, std::uint8_t ctype, std::string sid, std::string rid);

}  // namespace letterseal
