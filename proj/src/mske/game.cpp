#include "letterseal/mske/game.hpp"

#include <sstream>

#include "letterseal/error.hpp"
#include "letterseal/mske/predicates.hpp"
#include "letterseal/wire.hpp"

namespace letterseal::mske {

namespace {

constexpr std::uint64_t kProtocolStream = 0;
constexpr std::uint64_t kGameStream = 1;
constexpr std::uint64_t kLongTermStream = 2;

const char* role_text(Role r) { return r == Role::Initiator ? "init" : "resp"; }

std::string error_text(const Error& e) { return std::string(error_name(e.code())); }

std::string input_text(const SendInput& in) {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, input::Activate>) {
          os << "activate pid=" << v.pid << " role=" << role_text(v.role);
        } else if constexpr (std::is_same_v<T, input::Transmit>) {
          os << "transmit ctype=" << int(v.ctype) << " m=" << (v.plaintext.empty() ? "-" : to_hex(v.plaintext));
        } else {
          os << "deliver " << (v.envelope.empty() ? "-" : to_hex(v.envelope));
        }
      },
      in);
  return os.str();
}

const char* oracle_text(Oracle o) {
  switch (o) {
    case Oracle::Send: return "send";
    case Oracle::RevSessKey: return "rev_sesskey";
    case Oracle::RevLongTermKey: return "rev_ltk";
    case Oracle::RevRand: return "rev_rand";
    case Oracle::RevState: return "rev_state";
    case Oracle::Test: return "test";
  }
  return "?";
}

StageIndex to_stage(StageId id) { return {id.i, id.j}; }

}  // namespace

std::string stage_text(Protocol p, StageIndex s) {
  if (p == Protocol::V2) return std::to_string(s.x);
  return "[" + std::to_string(s.x) + "," + std::to_string(s.y) + "]";
}

const SessionRecord* RevealLog::find(PartyId u, std::uint32_t i) const {
  for (const auto& s : sessions) {
    if (s.owner == u && s.index == i) return &s;
  }
  return nullptr;
}

SessionRecord* RevealLog::find(PartyId u, std::uint32_t i) {
  return const_cast<SessionRecord*>(std::as_const(*this).find(u, i));
}

std::string QueryTrace::to_text() const {
  std::ostringstream os;
  os << "# protocol " << (protocol == Protocol::V2 ? "v2" : "vdr") << '\n';
  for (const auto& r : records) {
    os << oracle_text(r.oracle) << " u=" << r.u;
    if (r.oracle != Oracle::RevLongTermKey) os << " i=" << r.i;
    if (r.oracle == Oracle::Send) {
      os << ' ' << input_text(*r.input);
    } else if (r.oracle != Oracle::RevLongTermKey) {
      os << " s=" << stage_text(protocol, r.s);
    }
    os << " -> " << r.response << '\n';
  }
  return os.str();
}

Game::Game(Protocol protocol, std::uint32_t n_parties, std::uint64_t seed)
    : protocol_(protocol), protocol_rng_(seed, kProtocolStream), game_rng_(seed, kGameStream) {
  if (n_parties < 2) fail(ErrorCode::InvalidLength, "a game needs at least two parties");
  trace_.protocol = protocol;
  SeededRandom ltk_rng(seed, kLongTermStream);
  for (PartyId u = 1; u <= n_parties; ++u) {
    keys_.push_back(dh_keygen(ltk_rng));
    kids_.push_back(directory_.register_key(keys_.back().pub, party_name(u)));
  }
  b_ = (game_rng_.draw<1>()[0] & 1) != 0;
}

void Game::check_party(PartyId u) const {
  if (u == 0 || u > keys_.size()) fail(ErrorCode::NotFound, "party " + std::to_string(u));
}

const GroupElement& Game::public_key(PartyId u) const {
  check_party(u);
  return keys_[u - 1].pub;
}

std::uint32_t Game::kid(PartyId u) const {
  check_party(u);
  return kids_[u - 1];
}

std::string Game::party_name(PartyId u) { return "party-" + std::to_string(u); }

SessionRecord& Game::session(PartyId u, std::uint32_t i) {
  auto* rec = log_.find(u, i);
  if (!rec) fail(ErrorCode::StageUnknown, "no session " + std::to_string(u) + "/" + std::to_string(i));
  return *rec;
}

SendResult Game::send(PartyId u, std::uint32_t i, const SendInput& m) {
  check_party(u);
  SendResult out;
  auto* rec = log_.find(u, i);
  if (!rec) {
    if (const auto* a = std::get_if<input::Activate>(&m)) {
      out = activate(u, i, *a);
    } else {
      out.error = "no such session";
    }
  } else if (std::holds_alternative<input::Activate>(m)) {
    out.error = "session already active";
  } else {
    auto& mc = machines_[{u, i}];
    if (const auto* t = std::get_if<input::Transmit>(&m)) {
      out = transmit(*rec, mc, *t);
    } else {
      out = deliver(*rec, mc, std::get<input::Deliver>(m));
    }
  }

  std::string resp;
  if (out.response) {
    resp = to_hex(*out.response);
  } else if (out.stage) {
    resp = std::string(out.accepted ? "accept " : "reject ") + stage_text(protocol_, *out.stage);
    if (!out.error.empty()) resp += " " + out.error;
  } else if (!out.error.empty()) {
    resp = "error " + out.error;
  } else {
    resp = "none";
  }
  record({Oracle::Send, u, i, {}, m, resp});
  return out;
}

SendResult Game::activate(PartyId u, std::uint32_t i, const input::Activate& a) {
  SendResult out;
  if (a.pid == u || a.pid == 0 || a.pid > keys_.size()) {
    out.error = "invalid partner";
    return out;
  }
  SessionRecord rec;
  rec.owner = u;
  rec.index = i;
  rec.role = a.role;
  rec.pid = a.pid;
  rec.peerpk = public_key(a.pid);

  Machine mc;
  if (protocol_ == Protocol::V2) {
    mc.proto = v2_establish(keys_[u - 1].secret, rec.peerpk,
                            V2Identity{party_name(u), party_name(a.pid), kid(u), kid(a.pid)});
  } else if (a.role == Role::Initiator) {
    auto st = vdr_init_sender(VdrParty{keys_[u - 1].secret, rec.peerpk, kid(u), kid(a.pid)}, protocol_rng_);
    rec.rand[{0, 0}] = Bytes(st.self_eph->secret.view().begin(), st.self_eph->secret.view().end());
    mc.proto = std::move(st);
  }
  log_.sessions.push_back(std::move(rec));
  machines_[{u, i}] = std::move(mc);
  return out;
}

SendResult Game::transmit(SessionRecord& rec, Machine& mc, const input::Transmit& t) {
  SendResult out;
  try {
    if (auto* s = std::get_if<SessionV2>(&mc.proto)) {
      const StageIndex stage{mc.next_stage, 0};
      auto sealed = v2_seal(*s, t.ctype, t.plaintext, protocol_rng_);
      ++mc.next_stage;
      auto bytes = encode_envelope(sealed.envelope);
      rec.status[stage] = StageStatus::Accept;
      rec.key[stage] = sealed.key;
      rec.rand[stage] = sealed.randomness;
      rec.state[stage] = v2_export_session(*s);
      rec.transcript[stage] = bytes;
      out.stage = stage;
      out.response = std::move(bytes);
    } else if (auto* st = std::get_if<RatchetState>(&mc.proto)) {
      auto sealed = vdr_seal(*st, t.ctype, t.plaintext, protocol_rng_);
      const auto stage = to_stage(sealed.stage);
      auto bytes = encode_envelope(sealed.envelope);
      rec.status[stage] = StageStatus::Accept;
      rec.key[stage] = sealed.key;
      append(rec.rand[stage], sealed.nonce_rand);
      rec.state[stage] = vdr_export_state(*st);
      rec.transcript[stage] = bytes;
      out.stage = stage;
      out.response = std::move(bytes);
    } else {
      fail(ErrorCode::NotInitialized, "responder has not received yet");
    }
    out.accepted = true;
  } catch (const Error& e) {
    out.error = error_text(e);
  }
  return out;
}

SendResult Game::deliver(SessionRecord& rec, Machine& mc, const input::Deliver& d) {
  SendResult out;
  if (protocol_ == Protocol::V2) {
    const StageIndex stage{mc.next_stage++, 0};
    out.stage = stage;
    rec.transcript[stage] = d.envelope;
    auto& s = std::get<SessionV2>(mc.proto);
    try {
      auto opened = v2_open(s, decode_as<EnvelopeV2>(d.envelope));
      rec.status[stage] = StageStatus::Accept;
      rec.key[stage] = opened.key;
      rec.state[stage] = v2_export_session(s);
      out.accepted = true;
    } catch (const Error& e) {
      rec.status[stage] = StageStatus::Reject;
      out.error = error_text(e);
    }
    return out;
  }

  EnvelopeVDR env;
  try {
    env = decode_as<EnvelopeVDR>(d.envelope);
  } catch (const Error& e) {
    out.error = error_text(e);
    return out;
  }
  const StageIndex stage{env.i_index(), env.j_index};
  out.stage = stage;
  try {
    RatchetState st;
    if (auto* cur = std::get_if<RatchetState>(&mc.proto)) {
      st = *cur;
    } else {
      const auto& self = keys_[rec.owner - 1];
      st = vdr_lazy_init_receiver(VdrParty{self.secret, rec.peerpk, kid(rec.owner), kid(rec.pid)}, env);
    }
    auto opened = vdr_open(st, env, protocol_rng_);
    if (opened.new_eph) {
      rec.rand[{opened.new_send_epoch, 0}] = Bytes(opened.new_eph->view().begin(), opened.new_eph->view().end());
    }
    rec.status[stage] = StageStatus::Accept;
    rec.key[stage] = opened.key;
    rec.transcript[stage] = d.envelope;
    rec.state[stage] = vdr_export_state(st);
    mc.proto = std::move(st);
    out.accepted = true;
  } catch (const Error& e) {
    // A failed claim never overrides an already decided stage.
    if (!rec.status.contains(stage)) {
      rec.status[stage] = StageStatus::Reject;
      rec.transcript[stage] = d.envelope;
    }
    out.error = error_text(e);
  }
  return out;
}

SymmetricKey Game::rev_sesskey(PartyId u, std::uint32_t i, StageIndex s) {
  QueryRecord q{Oracle::RevSessKey, u, i, s, std::nullopt, {}};
  auto* rec = log_.find(u, i);
  if (!rec || !rec->accepted(s)) {
    q.response = "error StageNotAccepted";
    record(std::move(q));
    fail(ErrorCode::StageNotAccepted, "stage " + stage_text(protocol_, s) + " not accepted");
  }
  rec->rev_sesskey.insert(s);
  const auto key = rec->key.at(s);
  q.response = key.hex();
  record(std::move(q));
  return key;
}

GroupScalar Game::rev_ltk(PartyId u) {
  check_party(u);
  log_.rev_ltk.insert(u);
  const auto& sk = keys_[u - 1].secret;
  record({Oracle::RevLongTermKey, u, 0, {}, std::nullopt, sk.hex()});
  return sk;
}

Bytes Game::rev_rand(PartyId u, std::uint32_t i, StageIndex s) {
  QueryRecord q{Oracle::RevRand, u, i, s, std::nullopt, {}};
  auto* rec = log_.find(u, i);
  if (!rec || (!rec->rand.contains(s) && !rec->status.contains(s))) {
    q.response = "error StageUnknown";
    record(std::move(q));
    fail(ErrorCode::StageUnknown, "stage " + stage_text(protocol_, s));
  }
  rec->rev_rand.insert(s);
  Bytes out;
  if (auto it = rec->rand.find(s); it != rec->rand.end()) out = it->second;
  q.response = out.empty() ? "-" : to_hex(out);
  record(std::move(q));
  return out;
}

Bytes Game::rev_state(PartyId u, std::uint32_t i, StageIndex s) {
  QueryRecord q{Oracle::RevState, u, i, s, std::nullopt, {}};
  auto* rec = log_.find(u, i);
  if (!rec || !rec->state.contains(s)) {
    q.response = "error StageUnknown";
    record(std::move(q));
    fail(ErrorCode::StageUnknown, "no state for stage " + stage_text(protocol_, s));
  }
  rec->rev_state.insert(s);
  q.response = to_hex(rec->state.at(s));
  record(std::move(q));
  return rec->state.at(s);
}

std::optional<SymmetricKey> Game::test(PartyId u, std::uint32_t i, StageIndex s) {
  QueryRecord q{Oracle::Test, u, i, s, std::nullopt, "refused"};
  auto* rec = log_.find(u, i);
  if (tested_ || !rec || !rec->accepted(s)) {
    record(std::move(q));
    return std::nullopt;
  }
  tested_ = Tested{u, i, s};
  SymmetricKey k = rec->key.at(s);
  if (b_) k = SymmetricKey(game_rng_.draw<32>());
  q.response = k.hex();
  record(std::move(q));
  return k;
}

bool Game::fresh(const Tested& t) const {
  return protocol_ == Protocol::V2 ? fresh_v2(log_, t) : fresh_vdr(log_, t);
}

GameOutcome Game::finalize(bool guess) const {
  GameOutcome out;
  out.tested = tested_.has_value();
  out.fresh = out.tested && fresh(*tested_);
  out.guess_correct = guess == b_;
  out.output = (out.tested && out.fresh) ? out.guess_correct : b_;
  return out;
}

QueryTrace replay_trace(const QueryTrace& trace, std::uint32_t n_parties, std::uint64_t seed) {
  Game g(trace.protocol, n_parties, seed);
  for (const auto& r : trace.records) {
    try {
      switch (r.oracle) {
        case Oracle::Send: g.send(r.u, r.i, *r.input); break;
        case Oracle::RevSessKey: g.rev_sesskey(r.u, r.i, r.s); break;
        case Oracle::RevLongTermKey: g.rev_ltk(r.u); break;
        case Oracle::RevRand: g.rev_rand(r.u, r.i, r.s); break;
        case Oracle::RevState: g.rev_state(r.u, r.i, r.s); break;
        case Oracle::Test: g.test(r.u, r.i, r.s); break;
      }
    } catch (const Error&) {
      // the failure is already part of the new trace
    }
  }
  return g.trace();
}

}  // namespace letterseal::mske
