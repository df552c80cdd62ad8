#include "letterseal/kat.hpp"

#include <sstream>

#include "letterseal/crypto.hpp"
#include "letterseal/error.hpp"
#include "letterseal/linev1.hpp"
#include "letterseal/linev2.hpp"
#include "letterseal/linevdr.hpp"
#include "letterseal/packet.hpp"
#include "letterseal/random.hpp"
#include "letterseal/wire.hpp"

namespace letterseal {

namespace {

constexpr std::string_view kHeader = "# name input... output (hex; '-' is empty)";

Bytes field(std::string_view tok) { return tok == "-" ? Bytes{} : from_hex(tok); }

std::string hex_field(ByteView b) { return b.empty() ? "-" : to_hex(b); }

std::uint64_t be64(ByteView b) {
  if (b.size() != 8) fail(ErrorCode::InvalidLength, "expected 8-byte integer");
  std::uint64_t v = 0;
  for (auto c : b) v = (v << 8) | c;
  return v;
}

template <typename T>
T fixed(ByteView b) {
  return T(to_array<T::size>(b));
}

Bytes cat(ByteView a, ByteView b) {
  Bytes out(a.begin(), a.end());
  append(out, b);
  return out;
}

void arity(const std::vector<Bytes>& in, std::size_t n, const std::string& name) {
  if (in.size() != n) fail(ErrorCode::InvalidLength, name + " takes " + std::to_string(n) + " inputs");
}

struct BuiltinInput {
  const char* name;
  std::vector<const char*> inputs;
};

const std::vector<BuiltinInput>& builtin_inputs() {
  static const std::vector<BuiltinInput> table{
      {"sha256", {"-"}},
      {"sha256", {"616263"}},
      {"hmac_sha256", {"4a656665", "7768617420646f2079612077616e7420666f72206e6f7468696e673f"}},
      {"hkdf_sha256",
       {"0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b", "000102030405060708090a0b0c", "f0f1f2f3f4f5f6f7f8f9", "2a"}},
      {"kdf_root", {"0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b", "000102030405060708090a0b0c"}},
      {"kdf_root", {"000102030405060708090a0b0c", "0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b0b"}},
      {"kdf_chain", {"0000000000000000000000000000000000000000000000000000000000000000"}},
      {"kdf_chain3", {"0102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f20"}},
      {"x25519",
       {"a546e36bf0527c9d3b16154b82465edd62144c0ac1fc5a18506a2244ba449ac4",
        "e6db6867583030db3594c1a424b15f7c726624ec26b3353b10a903a6d0ab1c4c"}},
      {"x25519",
       {"4b66e9d4d1b4673c5ad22691957d6af5c11b6421e0ea01d42ca4169e7918ba0d",
        "e5210f12786811d3f4b7959d0538ae2c31dbe7106fc03c3efc4cd549c715a493"}},
      {"x25519_base", {"77076d0a7318a57d3c16c17251b26645df4c2f87ebc0992ab177fba51db92c2a"}},
      {"x25519_base", {"5dab087e624a8a4b79e17f8b83800ee66f3bb1292618b6fd1c2f8b27ff88e0eb"}},
      {"x25519",
       {"77076d0a7318a57d3c16c17251b26645df4c2f87ebc0992ab177fba51db92c2a",
        "de9edb7d7b7dc1b4d35b61c2ece435373f8343c85b78674dadfc7e146f882b4f"}},
      {"x25519",
       {"5dab087e624a8a4b79e17f8b83800ee66f3bb1292618b6fd1c2f8b27ff88e0eb",
        "8520f0098930a754748b7ddcb43ef75a0dbf3a0d26381af4eba4a98eaa9b4e6a"}},
      {"aes256_gcm",
       {"feffe9928665731c6d6a8f9467308308feffe9928665731c6d6a8f9467308308", "cafebabefacedbaddecaf888",
        "d9313225f88406e5a55909c5aff5269a86a7a9531534f7da2e4c303d8a318a721c3c0c95956809532fcf0e2449a6b525b16aedf5aa0de6"
        "57ba637b39",
        "feedfacedeadbeeffeedfacedeadbeefabaddad2"}},
      {"aes256_gcm", {"0000000000000000000000000000000000000000000000000000000000000000", "000000000000000000000000", "-", "-"}},
      {"aes256_gcm",
       {"0000000000000000000000000000000000000000000000000000000000000000", "000000000000000000000000",
        "00000000000000000000000000000000", "-"}},
      {"aes256_cbc_nopad",
       {"603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4", "000102030405060708090a0b0c0d0e0f",
        "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e5130c81c46a35ce411e5fbc1191a0a52eff69f2445df4f9b"
        "17ad2b417be66c3710"}},
      {"aes256_ecb", {"000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f", "00112233445566778899aabbccddeeff"}},
      {"v1_derive", {"000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f", "a0a1a2a3a4a5a6a7"}},
      {"v1_derive", {"0000000000000000000000000000000000000000000000000000000000000000", "0000000000000000"}},
      {"v1_mac",
       {"202122232425262728292a2b2c2d2e2f303132333435363738393a3b3c3d3e3f",
        "6c6574746572207365616c696e672076312063697068657274657874"}},
      {"v2_derive", {"000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f", "000102030405060708090a0b0c0d0e0f"}},
      {"vdr_rk0",
       {"77076d0a7318a57d3c16c17251b26645df4c2f87ebc0992ab177fba51db92c2a",
        "5dab087e624a8a4b79e17f8b83800ee66f3bb1292618b6fd1c2f8b27ff88e0eb",
        "4242424242424242424242424242424242424242424242424242424242424242"}},
      {"dh_keygen", {"0000000000000001"}},
      {"dh_keygen", {"0000000000000002"}},
      {"chacha_stream", {"0000000000000001", "0000000000000007"}},
  };
  return table;
}

}  // namespace

std::vector<KatRecord> parse_kat_file(std::string_view text) {
  std::vector<KatRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.size() < 2) throw ParseError("line " + std::to_string(lineno), "needs a name and an output");
    KatRecord r;
    r.name = toks.front();
    for (std::size_t k = 1; k + 1 < toks.size(); ++k) r.inputs.push_back(field(toks[k]));
    r.output = field(toks.back());
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_kat(const std::vector<KatRecord>& records) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& r : records) {
    out += r.name;
    for (const auto& in : r.inputs) out += " " + hex_field(in);
    out += " " + hex_field(r.output) + "\n";
  }
  return out;
}

Bytes compute_kat(const std::string& name, const std::vector<Bytes>& in) {
  if (name == "sha256") {
    arity(in, 1, name);
    auto d = hash(in[0]);
    return Bytes(d.view().begin(), d.view().end());
  }
  if (name == "hmac_sha256") {
    arity(in, 2, name);
    auto d = hmac_sha256(in[0], in[1]);
    return Bytes(d.view().begin(), d.view().end());
  }
  if (name == "hkdf_sha256") {
    arity(in, 4, name);
    if (in[3].size() != 1) fail(ErrorCode::InvalidLength, "hkdf length is one byte");
    return hkdf_sha256(in[1], in[0], in[2], in[3][0]);
  }
  if (name == "kdf_root") {
    arity(in, 2, name);
    auto s = kdf_root(in[0], in[1]);
    return cat(s.root.view(), s.chain.view());
  }
  if (name == "kdf_chain") {
    arity(in, 1, name);
    auto s = kdf_chain(fixed<SymmetricKey>(in[0]));
    return cat(s.message_key.view(), s.next_chain.view());
  }
  if (name == "kdf_chain3") {
    arity(in, 1, name);
    auto ck = fixed<SymmetricKey>(in[0]);
    Bytes out;
    for (int k = 0; k < 3; ++k) {
      auto s = kdf_chain(ck);
      append(out, s.message_key.view());
      ck = s.next_chain;
    }
    return out;
  }
  if (name == "x25519") {
    arity(in, 2, name);
    auto s = dh(fixed<GroupScalar>(in[0]), fixed<GroupElement>(in[1]));
    return Bytes(s.view().begin(), s.view().end());
  }
  if (name == "x25519_base") {
    arity(in, 1, name);
    auto p = dh_to_public(fixed<GroupScalar>(in[0]));
    return Bytes(p.view().begin(), p.view().end());
  }
  if (name == "aes256_gcm") {
    arity(in, 4, name);
    return detail::aead_seal_iv(fixed<SymmetricKey>(in[0]), in[1], in[2], in[3]);
  }
  if (name == "aes256_cbc_nopad") {
    arity(in, 3, name);
    auto ct = cbc_encrypt(fixed<SymmetricKey>(in[0]), to_array<16>(in[1]), in[2]);
    ct.resize(in[2].size());
    return ct;
  }
  if (name == "aes256_ecb") {
    arity(in, 2, name);
    auto b = ecb_encrypt_block(fixed<SymmetricKey>(in[0]), in[1]);
    return Bytes(b.begin(), b.end());
  }
  if (name == "v1_derive") {
    arity(in, 2, name);
    auto k = v1_derive(fixed<SharedSecret>(in[0]), in[1]);
    return cat(k.key.view(), k.iv);
  }
  if (name == "v1_mac") {
    arity(in, 2, name);
    auto t = v1_mac(fixed<SymmetricKey>(in[0]), in[1]);
    return Bytes(t.begin(), t.end());
  }
  if (name == "v2_derive") {
    arity(in, 2, name);
    auto k = v2_derive_key(fixed<SharedSecret>(in[0]), in[1]);
    return Bytes(k.view().begin(), k.view().end());
  }
  if (name == "vdr_rk0") {
    arity(in, 3, name);
    const auto x = fixed<GroupScalar>(in[0]);
    const auto y = fixed<GroupScalar>(in[1]);
    FixedRandom eph(in[2]);
    auto st = vdr_init_sender(VdrParty{x, dh_to_public(y), 1, 2}, eph);
    return cat(st.root_key.view(), st.send_chain->view());
  }
  if (name == "dh_keygen") {
    arity(in, 1, name);
    SeededRandom rng(be64(in[0]));
    auto kp = dh_keygen(rng);
    return cat(kp.secret.view(), kp.pub.view());
  }
  if (name == "chacha_stream") {
    arity(in, 2, name);
    SeededRandom rng(be64(in[0]), be64(in[1]));
    Bytes out(64);
    rng.fill(out);
    return out;
  }
  fail(ErrorCode::NotFound, "no KAT computation named '" + name + "'");
}

std::vector<KatResult> check_kats(const std::vector<KatRecord>& records) {
  std::vector<KatResult> out;
  for (const auto& r : records) {
    KatResult res{r, {}, false, {}};
    try {
      res.actual = compute_kat(r.name, r.inputs);
      res.ok = res.actual == r.output;
    } catch (const Error& e) {
      res.error = e.what();
    }
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<KatRecord> builtin_kats() {
  std::vector<KatRecord> out;
  for (const auto& b : builtin_inputs()) {
    KatRecord r;
    r.name = b.name;
    for (const auto* h : b.inputs) r.inputs.push_back(field(h));
    r.output = compute_kat(r.name, r.inputs);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<KatRecord> golden_fixtures(std::uint64_t seed) {
  SeededRandom rng(seed);
  const auto alice = dh_keygen(rng);
  const auto bob = dh_keygen(rng);
  std::vector<KatRecord> out;
  auto add = [&](std::string name, Bytes b) { out.push_back({std::move(name), {}, std::move(b)}); };

  auto s1 = v1_establish(alice.secret, bob.pub, 1, 2);
  add("envelope_v1", encode_envelope(v1_encrypt(s1, 0, as_bytes("golden v1"), rng)));

  auto s2 = v2_establish(alice.secret, bob.pub, V2Identity{"alice", "bob", 1, 2});
  const auto e2 = v2_encrypt(s2, 0, as_bytes("golden v2"), rng);
  add("envelope_v2", encode_envelope(e2));

  auto st = vdr_init_sender(VdrParty{alice.secret, bob.pub, 1, 2}, rng);
  add("envelope_vdr_0_0", encode_envelope(vdr_encrypt(st, 0, as_bytes("golden vdr"), rng)));
  add("envelope_vdr_0_1", encode_envelope(vdr_encrypt(st, 1, as_bytes("golden vdr again"), rng)));

  PacketMeta user;
  user.header = PacketHeader{1001, 1002, 0, 42, 1700000000000, 1700000000150, true, 0, 7};
  user.e2ee_version = 2;
  user.seq = 3;
  user.chunks = make_chunks(e2);
  add("packet_user", encode_packet(to_packet(user)));

  BotPacket bot;
  bot.header = PacketHeader{2001, 1002, 0, 43, 1700000000200, 1700000000300, true, 0, 0};
  bot.bot_tag2 = Bytes{0x00, 0x00, 0x01, 0x2c};
  bot.bot_origin = "official";
  bot.bot_check = true;
  bot.bot_track = "t-17";
  bot.text = "Your order has shipped.";
  add("packet_bot", encode_packet(to_packet(bot)));
  return out;
}

}  // namespace letterseal
