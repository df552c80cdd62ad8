#pragma once

#include <vector>

#include "letterseal/mske/game.hpp"

namespace letterseal::mske {

// Opposite roles and every transcript entry of a at stages <= s appears
// identically in b. Directional: b may have seen more than a.
bool match_sessions(const SessionRecord& a, const SessionRecord& b, StageIndex s);
std::vector<const SessionRecord*> matching_sessions(const RevealLog& log, const SessionRecord& a, StageIndex s);

bool fresh_v2(const RevealLog& log, const Tested& t);

// LINEvDR predicate family. Each takes the session (u, i) and a stage; a
// missing session evaluates to false.
namespace vdr {
bool valid(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s);
bool fresh_ll(const RevealLog& log, PartyId u, std::uint32_t i);
bool fresh_el(const RevealLog& log, PartyId u, std::uint32_t i);
bool fresh_initial(const RevealLog& log, PartyId u, std::uint32_t i);
bool fresh_ee(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s);
bool fresh_st(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s);
bool fresh_asym(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s);
bool fresh_sym(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s);
bool fresh_tau(const RevealLog& log, PartyId u, std::uint32_t i, StageIndex s);
}  // namespace vdr

bool fresh_vdr(const RevealLog& log, const Tested& t);

}  // namespace letterseal::mske
