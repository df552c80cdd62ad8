#include "letterseal/mske/predicates.hpp"

#include <algorithm>

namespace letterseal::mske {

bool match_sessions(const SessionRecord& a, const SessionRecord& b, StageIndex s) {
  if (a.role == b.role) return false;
  for (const auto& [stage, msg] : a.transcript) {
    if (s < stage) break;
    auto it = b.transcript.find(stage);
    if (it == b.transcript.end() || it->second != msg) return false;
  }
  return true;
}

std::vector<const SessionRecord*> matching_sessions(const RevealLog& log, const SessionRecord& a, StageIndex s) {
  std::vector<const SessionRecord*> out;
  for (const auto& b : log.sessions) {
    if (&b != &a && match_sessions(a, b, s)) out.push_back(&b);
  }
  return out;
}

bool fresh_v2(const RevealLog& log, const Tested& t) {
  const auto* pi = log.find(t.u, t.i);
  if (!pi) return false;
  if (log.rev_ltk.contains(pi->owner) || log.rev_ltk.contains(pi->pid)) return false;
  if (pi->rev_sesskey.contains(t.s)) return false;
  for (const auto& other : log.sessions) {
    const bool same_pair = (other.owner == pi->owner && other.pid == pi->pid) ||
                           (other.owner == pi->pid && other.pid == pi->owner);
    if (same_pair && !other.rev_state.empty()) return false;
  }
  for (const auto* partner : matching_sessions(log, *pi, t.s)) {
    if (partner->rev_sesskey.contains(t.s)) return false;
  }
  return true;
}

namespace vdr {

namespace {

// Every matching partner satisfies pred; with require_partner, at least one
// must exist.
template <typename Pred>
bool partners_all(const RevealLog& log, const SessionRecord& pi, StageIndex s, bool require_partner, Pred pred) {
  const auto partners = matching_sessions(log, pi, s);
  if (require_partner && partners.empty()) return false;
  return std::all_of(partners.begin(), partners.end(), [&](const SessionRecord* p) { return pred(*p); });
}

}  // namespace

bool valid(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s) {
  const auto* pi = log.find(u, i);
  if (!pi || !pi->accepted(s) || pi->rev_sesskey.contains(s)) return false;
  return partners_all(log, *pi, s, false, [&](const SessionRecord& p) { return !p.rev_sesskey.contains(s); });
}

bool fresh_ll(const RevealLog& log, PartyId u, std::uint32_t i) {
  const auto* pi = log.find(u, i);
  return pi && !log.rev_ltk.contains(pi->owner) && !log.rev_ltk.contains(pi->pid);
}

bool fresh_el(const RevealLog& log, PartyId u, std::uint32_t i) {
  const auto* pi = log.find(u, i);
  if (!pi) return false;
  const StageIndex first{0, 0};
  if (pi->role == Role::Initiator) {
    return !pi->rev_rand.contains(first) && !log.rev_ltk.contains(pi->pid);
  }
  return !log.rev_ltk.contains(pi->owner) &&
         partners_all(log, *pi, first, true, [&](const SessionRecord& p) { return !p.rev_rand.contains(first); });
}

bool fresh_initial(const RevealLog& log, PartyId u, std::uint32_t i) {
  return fresh_ll(log, u, i) || fresh_el(log, u, i);
}

bool fresh_ee(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s) {
  const auto* pi = log.find(u, i);
  if (!pi || s.x == 0) return false;
  const bool b = (pi->role == Role::Initiator) != (s.x % 2 == 0);
  const StageIndex own{s.x - (b ? 1u : 0u), 0};
  const StageIndex peer{s.x - (b ? 0u : 1u), 0};
  if (pi->rev_rand.contains(own)) return false;
  return partners_all(log, *pi, s, true, [&](const SessionRecord& p) { return !p.rev_rand.contains(peer); });
}

bool fresh_st(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s) {
  const auto* pi = log.find(u, i);
  if (!pi || pi->rev_state.contains(s)) return false;
  return partners_all(log, *pi, s, false, [&](const SessionRecord& p) { return !p.rev_state.contains(s); });
}

bool fresh_asym(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s) {
  if (s.x == 0) return fresh_initial(log, u, i);
  for (std::uint32_t x = s.x;; --x) {
    if (fresh_ee(log, u, i, {x, 0})) return true;
    if (!fresh_st(log, u, i, {x - 1, 0})) return false;
    if (x == 1) return fresh_initial(log, u, i);
  }
}

bool fresh_sym(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s) {
  for (std::uint32_t y = s.y; y > 0; --y) {
    if (!fresh_st(log, u, i, {s.x, y - 1})) return false;
  }
  return fresh_asym(log, u, i, {s.x, 0});
}

bool fresh_tau(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s) {
  if (s.y > 0) return fresh_sym(log, u, i, s);
  return fresh_asym(log, u, i, s);
}

}  // namespace vdr

bool fresh_vdr(const RevealLog& log, const Tested& t) {
  return vdr::valid(log, t.u, t.i, t.s) && vdr::fresh_tau(log, t.u, t.i, t.s);
}

}  // namespace letterseal::mske
