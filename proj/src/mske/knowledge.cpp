#include "letterseal/mske/knowledge.hpp"

#include "letterseal/error.hpp"

namespace letterseal::mske {

namespace {

void expand_chain(const SymmetricKey& ck, std::uint32_t depth, std::set<SymmetricKey>& out) {
  SymmetricKey cur = ck;
  for (std::uint32_t k = 0; k < depth; ++k) {
    auto step = kdf_chain(cur);
    out.insert(step.message_key);
    out.insert(step.next_chain);
    cur = step.next_chain;
  }
}

}  // namespace

std::set<SymmetricKey> reachable_keys(const AdversaryView& view, const ClosureLimits& limits) {
  std::set<GroupElement> publics(view.publics.begin(), view.publics.end());
  for (const auto& s : view.scalars) publics.insert(dh_to_public(s));

  const std::set<GroupElement> long_term(view.long_term.begin(), view.long_term.end());
  std::vector<SharedSecret> dhs;
  std::set<SharedSecret> seen_dh, statics;
  for (const auto& s : view.scalars) {
    const bool s_long = long_term.contains(dh_to_public(s));
    for (const auto& p : publics) {
      try {
        auto v = dh(s, p);
        if (seen_dh.insert(v).second) dhs.push_back(v);
        if (s_long && long_term.contains(p)) statics.insert(v);
      } catch (const Error&) {
        // low-order inputs contribute nothing
      }
    }
  }

  std::set<SymmetricKey> known(view.keys.begin(), view.keys.end());
  // Snapshot keys are treated as roots and chains alike.
  std::set<SymmetricKey> salts(known);
  salts.insert(SymmetricKey{});
  std::set<SymmetricKey> chains(known);

  const SymmetricKey zero{};
  auto pair = [&](const SharedSecret& first, const SharedSecret& second) {
    Bytes ikm;
    append(ikm, first.view());
    append(ikm, second.view());
    auto step = kdf_root(ikm, zero.view());
    salts.insert(step.root);
    chains.insert(step.chain);
  };
  for (const auto& st : statics) {
    for (const auto& d : dhs) {
      if (d == st) continue;
      pair(d, st);
      pair(st, d);
    }
  }

  std::set<SymmetricKey> used_salts;
  for (std::uint32_t round = 0; round < limits.rounds; ++round) {
    std::set<SymmetricKey> fresh_salts;
    for (const auto& salt : salts) {
      if (used_salts.contains(salt)) continue;
      used_salts.insert(salt);
      for (const auto& v : dhs) {
        auto step = kdf_root(v.view(), salt.view());
        if (!salts.contains(step.root)) fresh_salts.insert(step.root);
        chains.insert(step.chain);
      }
    }
    if (fresh_salts.empty()) break;
    salts.insert(fresh_salts.begin(), fresh_salts.end());
  }

  std::set<SymmetricKey> out(known);
  out.insert(salts.begin(), salts.end());
  out.erase(zero);
  for (const auto& ck : chains) {
    out.insert(ck);
    expand_chain(ck, limits.chain_depth, out);
  }
  return out;
}

void add_snapshot(AdversaryView& view, const RatchetState& st) {
  view.keys.push_back(st.root_key);
  if (st.send_chain) view.keys.push_back(*st.send_chain);
  if (st.recv_chain) view.keys.push_back(*st.recv_chain);
  for (const auto& [id, k] : st.skipped) view.keys.push_back(k);
  if (st.self_eph) {
    view.scalars.push_back(st.self_eph->secret);
    view.publics.push_back(st.self_eph->pub);
  }
  if (st.peer_eph_pub) view.publics.push_back(*st.peer_eph_pub);
  view.publics.push_back(st.peer_ltk_pub);
  view.long_term.push_back(st.peer_ltk_pub);
}

void add_transcript(AdversaryView& view, const std::vector<EnvelopeVDR>& envelopes) {
  for (const auto& e : envelopes) view.publics.push_back(e.eph_pub);
}

}  // namespace letterseal::mske
