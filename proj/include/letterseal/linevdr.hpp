#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>

#include "letterseal/crypto.hpp"
#include "letterseal/wire.hpp"

namespace letterseal {

enum class Role : std::uint8_t { Initiator = 0, Responder = 1 };

inline constexpr std::uint32_t kMaxSkip = 256;

// (asymmetric epoch i, symmetric index j)
struct StageId {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  friend auto operator<=>(const StageId&, const StageId&) = default;
};

// Initiator sends on even epochs, responder on odd ones. The long-term
// secret is not part of the state: it is only an input to initialization.
struct RatchetState {
  Role role = Role::Initiator;
  std::uint32_t kid_self = 0;
  std::uint32_t kid_peer = 0;
  GroupElement peer_ltk_pub;

  SymmetricKey root_key;
  std::optional<SymmetricKey> send_chain;
  std::uint32_t send_epoch = 0;  // i_s
  std::uint32_t send_index = 0;  // j_s
  std::optional<SymmetricKey> recv_chain;
  std::optional<std::uint32_t> recv_epoch;  // i_r, absent until first receive
  std::uint32_t recv_index = 0;             // j_r

  std::optional<KeyPair> self_eph;
  std::optional<GroupElement> peer_eph_pub;

  std::map<StageId, SymmetricKey> skipped;  // at most kMaxSkip entries
  std::set<StageId> consumed;

  friend bool operator==(const RatchetState&, const RatchetState&) = default;
};

struct VdrParty {
  GroupScalar ltk;
  GroupElement peer_ltk_pub;
  std::uint32_t kid_self = 0;
  std::uint32_t kid_peer = 0;
};

RatchetState vdr_init_sender(const VdrParty& self, RandomSource& rng);
// Requires an epoch-0 envelope; mirrors the sender's two DH terms.
RatchetState vdr_lazy_init_receiver(const VdrParty& self, const EnvelopeVDR& first);

struct VdrSealed {
  EnvelopeVDR envelope;
  SymmetricKey key;
  StageId stage;
  ByteArray<4> nonce_rand{};
};

struct VdrOpened {
  Bytes plaintext;
  SymmetricKey key;
  StageId stage;
  bool from_cache = false;
  // Set when the receive triggered a reply ratchet: the fresh ephemeral
  // secret and the sending epoch it belongs to.
  std::optional<GroupScalar> new_eph;
  std::uint32_t new_send_epoch = 0;
};

VdrSealed vdr_seal(RatchetState& st, std::uint8_t ctype, ByteView m, RandomSource& rng);
// State is only modified when the envelope authenticates.
VdrOpened vdr_open(RatchetState& st, const EnvelopeVDR& env, RandomSource& rng);

EnvelopeVDR vdr_encrypt(RatchetState& st, std::uint8_t ctype, ByteView m, RandomSource& rng);
Bytes vdr_decrypt(RatchetState& st, const EnvelopeVDR& env, RandomSource& rng);

ByteArray<8> vdr_nonce_material(std::uint32_t epoch, const ByteArray<4>& rand32);

Bytes vdr_export_state(const RatchetState& st);
RatchetState vdr_import_state(ByteView snapshot);

}  // namespace letterseal
