#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "letterseal/crypto.hpp"
#include "letterseal/directory.hpp"
#include "letterseal/linev2.hpp"
#include "letterseal/linevdr.hpp"
#include "letterseal/random.hpp"

namespace letterseal::mske {

enum class Protocol { V2, VDR };
enum class StageStatus { Active, Accept, Reject };

using PartyId = std::uint32_t;  // 1..n

// v2 stages use x only (per-session message ordinal, y = 0); vDR stages are
// (epoch, index) pairs ordered lexicographically.
struct StageIndex {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  friend auto operator<=>(const StageIndex&, const StageIndex&) = default;
};

std::string stage_text(Protocol p, StageIndex s);

struct SessionRecord {
  PartyId owner = 0;
  std::uint32_t index = 0;
  Role role = Role::Initiator;
  PartyId pid = 0;
  GroupElement peerpk;

  std::map<StageIndex, StageStatus> status;
  std::map<StageIndex, SymmetricKey> key;
  std::map<StageIndex, Bytes> rand;
  std::map<StageIndex, Bytes> state;
  std::map<StageIndex, Bytes> transcript;

  std::set<StageIndex> rev_sesskey;
  std::set<StageIndex> rev_rand;
  std::set<StageIndex> rev_state;

  bool accepted(StageIndex s) const {
    auto it = status.find(s);
    return it != status.end() && it->second == StageStatus::Accept;
  }
};

// Everything the freshness predicates look at.
struct RevealLog {
  std::vector<SessionRecord> sessions;
  std::set<PartyId> rev_ltk;

  const SessionRecord* find(PartyId u, std::uint32_t i) const;
  SessionRecord* find(PartyId u, std::uint32_t i);
};

struct Tested {
  PartyId u = 0;
  std::uint32_t i = 0;
  StageIndex s;
};

namespace input {
struct Activate {
  PartyId pid = 0;
  Role role = Role::Initiator;
};
// Ask the session to encrypt and emit the next message.
struct Transmit {
  std::uint8_t ctype = 0;
  Bytes plaintext;
};
// Hand the session an incoming envelope (honest or adversarial bytes).
struct Deliver {
  Bytes envelope;
};
}  // namespace input

using SendInput = std::variant<input::Activate, input::Transmit, input::Deliver>;

struct SendResult {
  std::optional<Bytes> response;
  std::optional<StageIndex> stage;
  bool accepted = false;
  std::string error;
};

enum class Oracle { Send, RevSessKey, RevLongTermKey, RevRand, RevState, Test };

struct QueryRecord {
  Oracle oracle = Oracle::Send;
  PartyId u = 0;
  std::uint32_t i = 0;
  StageIndex s;
  std::optional<SendInput> input;
  std::string response;
};

struct QueryTrace {
  Protocol protocol = Protocol::V2;
  std::vector<QueryRecord> records;
  std::string to_text() const;
};

struct GameOutcome {
  bool tested = false;
  bool fresh = false;
  bool guess_correct = false;
  bool output = false;  // experiment output per the game skeleton
};

class Game {
 public:
  Game(Protocol protocol, std::uint32_t n_parties, std::uint64_t seed);

  Protocol protocol() const { return protocol_; }
  std::uint32_t parties() const { return static_cast<std::uint32_t>(keys_.size()); }
  const GroupElement& public_key(PartyId u) const;
  std::uint32_t kid(PartyId u) const;
  static std::string party_name(PartyId u);

  SendResult send(PartyId u, std::uint32_t i, const SendInput& m);
  SymmetricKey rev_sesskey(PartyId u, std::uint32_t i, StageIndex s);
  GroupScalar rev_ltk(PartyId u);
  Bytes rev_rand(PartyId u, std::uint32_t i, StageIndex s);
  Bytes rev_state(PartyId u, std::uint32_t i, StageIndex s);
  // nullopt is the refusal sentinel.
  std::optional<SymmetricKey> test(PartyId u, std::uint32_t i, StageIndex s);

  GameOutcome finalize(bool guess) const;
  bool fresh(const Tested& t) const;

  bool challenge_bit() const { return b_; }
  const std::optional<Tested>& tested() const { return tested_; }
  const RevealLog& log() const { return log_; }
  const QueryTrace& trace() const { return trace_; }
  const KeyDirectory& directory() const { return directory_; }

 private:
  struct Machine {
    std::variant<std::monostate, SessionV2, RatchetState> proto;
    std::uint32_t next_stage = 0;
  };

  SessionRecord& session(PartyId u, std::uint32_t i);
  void check_party(PartyId u) const;
  SendResult activate(PartyId u, std::uint32_t i, const input::Activate& a);
  SendResult transmit(SessionRecord& rec, Machine& mc, const input::Transmit& t);
  SendResult deliver(SessionRecord& rec, Machine& mc, const input::Deliver& d);
  void record(QueryRecord r) { trace_.records.push_back(std::move(r)); }

  Protocol protocol_;
  std::vector<KeyPair> keys_;
  std::vector<std::uint32_t> kids_;
  KeyDirectory directory_;
  SeededRandom protocol_rng_;
  SeededRandom game_rng_;
  bool b_ = false;
  std::optional<Tested> tested_;
  RevealLog log_;
  std::map<std::pair<PartyId, std::uint32_t>, Machine> machines_;
  QueryTrace trace_;
};

// Re-executes every query of a trace against a fresh game with the same
// parameters and returns the new trace.
QueryTrace replay_trace(const QueryTrace& trace, std::uint32_t n_parties, std::uint64_t seed);

}  // namespace letterseal::mske
