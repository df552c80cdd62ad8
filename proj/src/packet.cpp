#include "letterseal/packet.hpp"

#include "letterseal/codec.hpp"

namespace letterseal {

namespace {

constexpr std::uint8_t kMagic0 = 'L';
constexpr std::uint8_t kMagic1 = 'P';
constexpr std::uint8_t kLayout = 1;

enum Section : std::uint8_t { kE2ee = 1, kBot = 2, kChunks = 3, kText = 4 };

void put_i64(Bytes& out, std::int64_t v) { put_u64(out, static_cast<std::uint64_t>(v)); }

void put_section(Bytes& out, std::uint8_t tag, const Bytes& body) {
  out.push_back(tag);
  put_blob32(out, body, "section");
}

}  // namespace

Packet to_packet(const PacketMeta& p) {
  Packet out;
  out.header = p.header;
  out.e2ee = E2eeMetadata{p.e2ee_version, p.seq};
  out.chunks = p.chunks;
  return out;
}

Packet to_packet(const BotPacket& p) {
  Packet out;
  out.header = p.header;
  out.bot = BotMetadata{p.bot_tag2, p.bot_origin, p.bot_check, p.bot_track};
  out.text = p.text;
  return out;
}

Bytes encode_packet(const Packet& p) {
  Bytes out{kMagic0, kMagic1, kLayout};
  const auto& h = p.header;
  put_i64(out, h.from);
  put_i64(out, h.to);
  out.push_back(h.to_type);
  put_i64(out, h.id);
  put_i64(out, h.created_time);
  put_i64(out, h.delivered_time);
  out.push_back(h.has_content ? 1 : 0);
  out.push_back(h.content_type);
  put_i64(out, h.session_id);

  std::uint8_t count = (p.e2ee ? 1 : 0) + (p.bot ? 1 : 0) + (p.chunks ? 1 : 0) + (p.text ? 1 : 0);
  out.push_back(count);
  if (p.e2ee) {
    Bytes body{p.e2ee->e2ee_version};
    put_i64(body, p.e2ee->seq);
    put_section(out, kE2ee, body);
  }
  if (p.bot) {
    Bytes body;
    put_blob32(body, p.bot->bot_tag2, "bot_tag2");
    put_str16(body, p.bot->bot_origin, "bot_origin");
    body.push_back(p.bot->bot_check ? 1 : 0);
    put_str16(body, p.bot->bot_track, "bot_track");
    put_section(out, kBot, body);
  }
  if (p.chunks) {
    if (p.chunks->size() > 0xFFFF) fail(ErrorCode::InvalidLength, "too many chunks");
    Bytes body;
    put_u16(body, static_cast<std::uint16_t>(p.chunks->size()));
    for (const auto& c : *p.chunks) put_blob32(body, c, "chunk");
    put_section(out, kChunks, body);
  }
  if (p.text) put_section(out, kText, Bytes(p.text->begin(), p.text->end()));
  return out;
}

bool looks_like_packet(ByteView data) {
  return data.size() >= 3 && data[0] == kMagic0 && data[1] == kMagic1;
}

Packet decode_packet(ByteView data) {
  Reader r(data);
  if (r.u8("magic") != kMagic0 || r.u8("magic") != kMagic1) throw ParseError("magic", "not a packet record");
  if (auto v = r.u8("layout"); v != kLayout) throw ParseError("layout", "unknown layout " + std::to_string(v));
  Packet p;
  auto& h = p.header;
  h.from = r.i64("from");
  h.to = r.i64("to");
  h.to_type = r.u8("toType");
  h.id = r.i64("id");
  h.created_time = r.i64("createdTime");
  h.delivered_time = r.i64("deliveredTime");
  h.has_content = r.boolean("hasContent");
  h.content_type = r.u8("contentType");
  h.session_id = r.i64("sessionId");

  const auto count = r.u8("sections");
  for (unsigned n = 0; n < count; ++n) {
    const auto tag = r.u8("section.tag");
    const auto body = r.blob32("section.body");
    Reader s(body);
    switch (tag) {
      case kE2ee:
        if (p.e2ee) throw ParseError("contentMetadata", "duplicate section");
        p.e2ee = E2eeMetadata{s.u8("e2eeVersion"), s.i64("seq")};
        break;
      case kBot: {
        if (p.bot) throw ParseError("bot", "duplicate section");
        BotMetadata b;
        b.bot_tag2 = s.blob32("BOT_TAG2");
        b.bot_origin = s.str16("BOT_ORIGIN");
        b.bot_check = s.boolean("BOT_CHECK");
        b.bot_track = s.str16("BOT_TRACK");
        p.bot = std::move(b);
        break;
      }
      case kChunks: {
        if (p.chunks) throw ParseError("chunks", "duplicate section");
        std::vector<Bytes> chunks(s.u16("chunks.count"));
        for (auto& c : chunks) c = s.blob32("chunks.item");
        p.chunks = std::move(chunks);
        break;
      }
      case kText:
        if (p.text) throw ParseError("text", "duplicate section");
        p.text = std::string(body.begin(), body.end());
        s.bytes(body.size(), "text");
        break;
      default:
        throw ParseError("section.tag", "unknown section " + std::to_string(tag));
    }
    s.finish("section");
  }
  r.finish("packet");
  return p;
}

std::string_view packet_class_name(PacketClass c) {
  switch (c) {
    case PacketClass::UserE2EE: return "UserE2EE";
    case PacketClass::BotPlaintext: return "BotPlaintext";
    case PacketClass::Ambiguous: return "Ambiguous";
  }
  return "Ambiguous";
}

PacketClass classify_packet(const Packet& p) {
  const bool user = p.chunks.has_value() && !p.chunks->empty();
  const bool bot = p.bot.has_value() && p.text.has_value();
  if (user == bot) return PacketClass::Ambiguous;
  return user ? PacketClass::UserE2EE : PacketClass::BotPlaintext;
}

ChunkFields parse_chunks(std::span<const Bytes> chunks) {
  if (chunks.size() != 5) {
    fail(ErrorCode::ChunkCountError, "expected 5 chunks, got " + std::to_string(chunks.size()));
  }
  auto exact = [&](std::size_t idx, std::size_t n, const char* field) {
    if (chunks[idx].size() != n) {
      throw ParseError(field, "expected " + std::to_string(n) + " bytes, got " + std::to_string(chunks[idx].size()));
    }
    return ByteView(chunks[idx]);
  };
  ChunkFields f;
  f.salt = to_array<16>(exact(0, 16, "chunks[0].salt"));
  if (chunks[1].size() < 16) throw ParseError("chunks[1].ciphertext", "shorter than the GCM tag");
  f.ciphertext = chunks[1];
  f.nonce_material = to_array<8>(exact(2, 8, "chunks[2].nonce_material"));
  f.kid_a = load_be32(exact(3, 4, "chunks[3].kid_A"));
  f.kid_b = load_be32(exact(4, 4, "chunks[4].kid_B"));
  return f;
}

std::vector<Bytes> make_chunks(const EnvelopeV2& e) {
  Bytes kid_a, kid_b;
  put_u32(kid_a, e.kid_sender);
  put_u32(kid_b, e.kid_receiver);
  return {Bytes(e.salt.begin(), e.salt.end()), e.ciphertext,
          Bytes(e.nonce_material.begin(), e.nonce_material.end()), kid_a, kid_b};
}

EnvelopeV2 envelope_from_chunks(const ChunkFields& c, std::uint8_t ctype, std::string sid, std::string rid) {
  EnvelopeV2 e;
  e.ctype = ctype;
  e.salt = c.salt;
  e.ciphertext = c.ciphertext;
  e.nonce_material = c.nonce_material;
  e.kid_sender = c.kid_a;
  e.kid_receiver = c.kid_b;
  e.sid = std::move(sid);
  e.rid = std::move(rid);
  return e;
}

}  // namespace letterseal
