#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "letterseal/crypto.hpp"
#include "letterseal/linevdr.hpp"
#include "letterseal/wire.hpp"

namespace letterseal::mske {

// What a passive adversary holds: secret scalars, public group elements and
// raw symmetric keys whose role it may not know. long_term lists the
// publics known to be registered long-term keys.
struct AdversaryView {
  std::vector<GroupScalar> scalars;
  std::vector<GroupElement> publics;
  std::vector<GroupElement> long_term;
  std::vector<SymmetricKey> keys;
};

struct ClosureLimits {
  std::uint32_t chain_depth = 8;  // kdf_chain steps from every known chain key
  // Chained kdf_root steps. Every genuine step consumes a DH value built
  // from a known scalar, so a view holding k scalars needs at most k + 1.
  std::uint32_t rounds = 2;
};

// Closes the view under the derivations the protocol performs:
//   dh(known scalar, known public);
//   kdf_root(dh value, salt) for salt in known keys or the zero salt;
//   kdf_root(d || s, zero salt) and kdf_root(s || d, zero salt) where s is a
//   static-static value (both sides long-term) and d any other dh value;
//   kdf_chain, chain_depth steps deep, from every chain-capable key.
// Root outputs feed back as salts until nothing new appears or rounds runs out.
std::set<SymmetricKey> reachable_keys(const AdversaryView& view, const ClosureLimits& limits = {});

void add_snapshot(AdversaryView& view, const RatchetState& st);
void add_transcript(AdversaryView& view, const std::vector<EnvelopeVDR>& envelopes);

}  // namespace letterseal::mske
