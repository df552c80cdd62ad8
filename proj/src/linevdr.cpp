#include "letterseal/linevdr.hpp"

#include <vector>

#include "letterseal/codec.hpp"
#include "letterseal/error.hpp"

namespace letterseal {

namespace {

constexpr std::uint8_t kSnapshotVersion = 1;
const SymmetricKey kZeroSalt{};

Bytes concat(const SharedSecret& a, const SharedSecret& b) {
  Bytes ikm;
  ikm.reserve(64);
  append(ikm, a.view());
  append(ikm, b.view());
  return ikm;
}

std::uint32_t sender_parity(Role peer_role) { return peer_role == Role::Initiator ? 0 : 1; }

Role other(Role r) { return r == Role::Initiator ? Role::Responder : Role::Initiator; }

void evict_overflow(std::map<StageId, SymmetricKey>& skipped) {
  while (skipped.size() > kMaxSkip) skipped.erase(skipped.begin());
}

}  // namespace

ByteArray<8> vdr_nonce_material(std::uint32_t epoch, const ByteArray<4>& rand32) {
  ByteArray<8> m{};
  for (int k = 0; k < 4; ++k) m[k] = static_cast<std::uint8_t>(epoch >> (24 - 8 * k));
  std::copy(rand32.begin(), rand32.end(), m.begin() + 4);
  return m;
}

RatchetState vdr_init_sender(const VdrParty& self, RandomSource& rng) {
  RatchetState st;
  st.role = Role::Initiator;
  st.kid_self = self.kid_self;
  st.kid_peer = self.kid_peer;
  st.peer_ltk_pub = self.peer_ltk_pub;
  auto eph = dh_keygen(rng);
  auto ikm = concat(dh(eph.secret, self.peer_ltk_pub), dh(self.ltk, self.peer_ltk_pub));
  auto step = kdf_root(ikm, kZeroSalt.view());
  wipe(ikm);
  st.root_key = step.root;
  st.send_chain = step.chain;
  st.self_eph = eph;
  return st;
}

RatchetState vdr_lazy_init_receiver(const VdrParty& self, const EnvelopeVDR& first) {
  if (first.i_index() != 0) fail(ErrorCode::NotInitialized, "first envelope must belong to epoch 0");
  RatchetState st;
  st.role = Role::Responder;
  st.kid_self = self.kid_self;
  st.kid_peer = self.kid_peer;
  st.peer_ltk_pub = self.peer_ltk_pub;
  auto ikm = concat(dh(self.ltk, first.eph_pub), dh(self.ltk, self.peer_ltk_pub));
  auto step = kdf_root(ikm, kZeroSalt.view());
  wipe(ikm);
  st.root_key = step.root;
  st.recv_chain = step.chain;
  st.recv_epoch = 0;
  st.peer_eph_pub = first.eph_pub;
  return st;
}

VdrSealed vdr_seal(RatchetState& st, std::uint8_t ctype, ByteView m, RandomSource& rng) {
  if (!st.send_chain || !st.self_eph) fail(ErrorCode::NotInitialized, "no sending chain yet");
  VdrSealed out;
  auto step = kdf_chain(*st.send_chain);
  out.key = step.message_key;
  out.stage = {st.send_epoch, st.send_index};
  out.nonce_rand = rng.draw<4>();
  auto& e = out.envelope;
  e.ctype = ctype;
  e.kid_sender = st.kid_self;
  e.kid_receiver = st.kid_peer;
  e.eph_pub = st.self_eph->pub;
  e.j_index = st.send_index;
  e.nonce_material = vdr_nonce_material(st.send_epoch, out.nonce_rand);
  e.ciphertext = aead_seal(out.key, AeadNonce::from_material(e.nonce_material), m, vdr_associated_data(e));
  st.send_chain = step.next_chain;
  ++st.send_index;
  return out;
}

VdrOpened vdr_open(RatchetState& st, const EnvelopeVDR& env, RandomSource& rng) {
  const StageId stage{env.i_index(), env.j_index};
  if (st.consumed.contains(stage)) fail(ErrorCode::ReplayRejected, "stage already consumed");
  if (env.kid_receiver != st.kid_self || env.kid_sender != st.kid_peer) {
    fail(ErrorCode::KidMismatch, "envelope kids do not match this session");
  }
  if (stage.i % 2 != sender_parity(other(st.role))) fail(ErrorCode::ParityViolation, "epoch parity");

  const auto nonce = AeadNonce::from_material(env.nonce_material);
  const auto ad = vdr_associated_data(env);
  VdrOpened out;
  out.stage = stage;

  if (auto it = st.skipped.find(stage); it != st.skipped.end()) {
    out.plaintext = aead_open(it->second, nonce, env.ciphertext, ad);
    out.key = it->second;
    out.from_cache = true;
    st.skipped.erase(it);
    st.consumed.insert(stage);
    return out;
  }

  // Tentative receive-chain position; committed only after the tag checks.
  SymmetricKey root = st.root_key;
  SymmetricKey chain;
  std::uint32_t index = 0;
  bool new_epoch = false;
  if (st.recv_epoch && stage.i == *st.recv_epoch) {
    chain = *st.recv_chain;
    index = st.recv_index;
    if (stage.j < index) fail(ErrorCode::StaleEpoch, "message key no longer available");
  } else if (!st.recv_epoch || stage.i > *st.recv_epoch) {
    if (!st.self_eph) fail(ErrorCode::NotInitialized, "no ephemeral to ratchet with");
    auto step = kdf_root(dh(st.self_eph->secret, env.eph_pub).view(), root.view());
    root = step.root;
    chain = step.chain;
    new_epoch = true;
  } else {
    fail(ErrorCode::StaleEpoch, "epoch already closed");
  }

  if (stage.j - index > kMaxSkip) fail(ErrorCode::SkipLimit, "too many skipped messages");
  std::vector<std::pair<StageId, SymmetricKey>> cached;
  while (index < stage.j) {
    auto step = kdf_chain(chain);
    cached.emplace_back(StageId{stage.i, index}, step.message_key);
    chain = step.next_chain;
    ++index;
  }
  auto step = kdf_chain(chain);
  out.plaintext = aead_open(step.message_key, nonce, env.ciphertext, ad);
  out.key = step.message_key;

  st.root_key = root;
  st.recv_chain = step.next_chain;
  st.recv_epoch = stage.i;
  st.recv_index = index + 1;
  st.peer_eph_pub = env.eph_pub;
  for (auto& [k, v] : cached) st.skipped.emplace(k, v);
  evict_overflow(st.skipped);
  st.consumed.insert(stage);

  if (new_epoch || !st.send_chain) {
    auto eph = dh_keygen(rng);
    auto reply = kdf_root(dh(eph.secret, env.eph_pub).view(), st.root_key.view());
    st.root_key = reply.root;
    st.send_chain = reply.chain;
    st.send_epoch = stage.i + 1;
    st.send_index = 0;
    st.self_eph = eph;
    out.new_eph = eph.secret;
    out.new_send_epoch = st.send_epoch;
  }
  return out;
}

EnvelopeVDR vdr_encrypt(RatchetState& st, std::uint8_t ctype, ByteView m, RandomSource& rng) {
  return vdr_seal(st, ctype, m, rng).envelope;
}

Bytes vdr_decrypt(RatchetState& st, const EnvelopeVDR& env, RandomSource& rng) {
  return vdr_open(st, env, rng).plaintext;
}

namespace {

void put_key(Bytes& out, const std::optional<SymmetricKey>& k) {
  out.push_back(k ? 1 : 0);
  if (k) append(out, k->view());
}

std::optional<SymmetricKey> read_key(Reader& r, const char* field) {
  if (!r.boolean(field)) return std::nullopt;
  return SymmetricKey(r.array<32>(field));
}

}  // namespace

Bytes vdr_export_state(const RatchetState& st) {
  Bytes out{kSnapshotVersion, static_cast<std::uint8_t>(st.role)};
  put_u32(out, st.kid_self);
  put_u32(out, st.kid_peer);
  append(out, st.peer_ltk_pub.view());
  append(out, st.root_key.view());
  put_key(out, st.send_chain);
  put_u32(out, st.send_epoch);
  put_u32(out, st.send_index);
  put_key(out, st.recv_chain);
  out.push_back(st.recv_epoch ? 1 : 0);
  put_u32(out, st.recv_epoch.value_or(0));
  put_u32(out, st.recv_index);
  out.push_back(st.self_eph ? 1 : 0);
  if (st.self_eph) {
    append(out, st.self_eph->secret.view());
    append(out, st.self_eph->pub.view());
  }
  out.push_back(st.peer_eph_pub ? 1 : 0);
  if (st.peer_eph_pub) append(out, st.peer_eph_pub->view());
  put_u32(out, static_cast<std::uint32_t>(st.skipped.size()));
  for (const auto& [id, key] : st.skipped) {
    put_u32(out, id.i);
    put_u32(out, id.j);
    append(out, key.view());
  }
  put_u32(out, static_cast<std::uint32_t>(st.consumed.size()));
  for (const auto& id : st.consumed) {
    put_u32(out, id.i);
    put_u32(out, id.j);
  }
  return out;
}

RatchetState vdr_import_state(ByteView snapshot) {
  Reader r(snapshot);
  if (r.u8("snapshot.version") != kSnapshotVersion) throw ParseError("snapshot.version", "unsupported");
  RatchetState st;
  const auto role = r.u8("role");
  if (role > 1) throw ParseError("role", "unknown role");
  st.role = static_cast<Role>(role);
  st.kid_self = r.u32("kid_self");
  st.kid_peer = r.u32("kid_peer");
  st.peer_ltk_pub = GroupElement(r.array<32>("peer_ltk_pub"));
  st.root_key = SymmetricKey(r.array<32>("root_key"));
  st.send_chain = read_key(r, "send_chain");
  st.send_epoch = r.u32("send_epoch");
  st.send_index = r.u32("send_index");
  st.recv_chain = read_key(r, "recv_chain");
  const bool has_recv = r.boolean("recv_epoch.present");
  const auto recv_epoch = r.u32("recv_epoch");
  if (has_recv) st.recv_epoch = recv_epoch;
  st.recv_index = r.u32("recv_index");
  if (r.boolean("self_eph.present")) {
    KeyPair kp{GroupScalar(r.array<32>("self_eph.secret")), GroupElement(r.array<32>("self_eph.pub"))};
    st.self_eph = kp;
  }
  if (r.boolean("peer_eph.present")) st.peer_eph_pub = GroupElement(r.array<32>("peer_eph_pub"));
  const auto nskipped = r.u32("skipped.count");
  if (nskipped > kMaxSkip) throw ParseError("skipped.count", "exceeds cache bound");
  for (std::uint32_t k = 0; k < nskipped; ++k) {
    StageId id{r.u32("skipped.i"), r.u32("skipped.j")};
    st.skipped.emplace(id, SymmetricKey(r.array<32>("skipped.key")));
  }
  const auto nconsumed = r.u32("consumed.count");
  if (nconsumed > r.remaining() / 8) throw ParseError("consumed.count", "length field overflows buffer");
  for (std::uint32_t k = 0; k < nconsumed; ++k) {
    StageId id{r.u32("consumed.i"), r.u32("consumed.j")};
    st.consumed.insert(id);
  }
  r.finish("snapshot");
  return st;
}

}  // namespace letterseal
