#pragma once

#include <functional>
#include <string>
#include <vector>

#include "letterseal/linevdr.hpp"
#include "letterseal/mske/game.hpp"
#include "letterseal/wire.hpp"

namespace tables {

using namespace letterseal;
using namespace letterseal::mske;

struct PredicateCase {
  std::string name;
  Protocol protocol;
  std::function<void(Game&)> script;
  Tested target;
  bool fresh;
};

inline constexpr std::uint32_t kParties = 3;
inline constexpr std::uint64_t kSeed = 1;

inline Bytes transmit(Game& g, PartyId u, std::uint32_t i, std::string_view text) {
  return *g.send(u, i, input::Transmit{0, Bytes(text.begin(), text.end())}).response;
}

inline void deliver(Game& g, PartyId u, std::uint32_t i, const Bytes& env) { g.send(u, i, input::Deliver{env}); }

inline void pair_up(Game& g, PartyId a, PartyId b, std::uint32_t i_a, std::uint32_t i_b) {
  g.send(a, i_a, input::Activate{b, Role::Initiator});
  g.send(b, i_b, input::Activate{a, Role::Responder});
}

// v2: (1,1) initiator and (2,1) responder. Stage 0 is 1 -> 2, stage 1 is 2 -> 1.
inline void honest_v2(Game& g, std::uint32_t i = 1) {
  pair_up(g, 1, 2, i, i);
  deliver(g, 2, i, transmit(g, 1, i, "m0"));
  deliver(g, 1, i, transmit(g, 2, i, "m1"));
}

// vDR: two messages per epoch over epochs 0, 1, 2, alternating senders.
inline void honest_vdr(Game& g) {
  pair_up(g, 1, 2, 1, 1);
  for (std::uint32_t x = 0; x < 3; ++x) {
    const PartyId from = x % 2 == 0 ? 1 : 2;
    const PartyId to = 3 - from;
    for (int k = 0; k < 2; ++k) deliver(g, to, 1, transmit(g, from, 1, "m"));
  }
}

// Party 1's long-term key lets the adversary open a session to party 2 as 1.
inline void forged_vdr(Game& g) {
  g.send(2, 2, input::Activate{1, Role::Responder});
  const auto ltk = g.rev_ltk(1);
  SeededRandom adv(kSeed, 9);
  auto st = vdr_init_sender(VdrParty{ltk, g.public_key(2), g.kid(1), g.kid(2)}, adv);
  deliver(g, 2, 2, encode_envelope(vdr_encrypt(st, 0, Bytes{'x'}, adv)));
}

inline std::function<void(Game&)> then(void (*base)(Game&), std::function<void(Game&)> extra) {
  return [base, extra](Game& g) {
    base(g);
    extra(g);
  };
}

inline void v2_base(Game& g) { honest_v2(g); }

inline std::vector<PredicateCase> v2_cases() {
  const auto V = Protocol::V2;
  auto t = [](PartyId u, std::uint32_t x) { return Tested{u, 1, {x, 0}}; };
  return {
      {"v2 honest", V, v2_base, t(2, 0), true},
      {"v2 peer long-term key revealed", V, then(v2_base, [](Game& g) { g.rev_ltk(1); }), t(2, 0), false},
      {"v2 owner long-term key revealed", V, then(v2_base, [](Game& g) { g.rev_ltk(2); }), t(2, 0), false},
      {"v2 bystander long-term key revealed", V, then(v2_base, [](Game& g) { g.rev_ltk(3); }), t(2, 0), true},
      {"v2 tested key revealed", V, then(v2_base, [](Game& g) { g.rev_sesskey(2, 1, {0, 0}); }), t(2, 0), false},
      {"v2 other stage key revealed", V, then(v2_base, [](Game& g) { g.rev_sesskey(2, 1, {1, 0}); }), t(2, 0), true},
      {"v2 partner key revealed", V, then(v2_base, [](Game& g) { g.rev_sesskey(1, 1, {0, 0}); }), t(2, 0), false},
      {"v2 partner other stage key revealed", V, then(v2_base, [](Game& g) { g.rev_sesskey(1, 1, {1, 0}); }),
       t(2, 0), true},
      {"v2 partner state revealed", V, then(v2_base, [](Game& g) { g.rev_state(1, 1, {0, 0}); }), t(2, 0), false},
      {"v2 own later state revealed", V, then(v2_base, [](Game& g) { g.rev_state(2, 1, {1, 0}); }), t(2, 0),
       false},
      {"v2 state of another pair revealed", V,
       then(v2_base,
            [](Game& g) {
              pair_up(g, 3, 1, 1, 2);
              deliver(g, 1, 2, transmit(g, 3, 1, "z"));
              g.rev_state(3, 1, {0, 0});
              g.rev_ltk(3);
            }),
       t(2, 0), true},
      {"v2 sender randomness revealed", V, then(v2_base, [](Game& g) { g.rev_rand(1, 1, {0, 0}); }), t(2, 0),
       true},
      {"v2 unanswered sender stage", V,
       [](Game& g) {
         pair_up(g, 1, 2, 1, 1);
         transmit(g, 1, 1, "lonely");
       },
       t(1, 0), true},
      {"v2 parallel session key revealed", V,
       then(v2_base,
            [](Game& g) {
              honest_v2(g, 2);
              g.rev_sesskey(1, 2, {0, 0});
            }),
       t(2, 0), true},
      {"v2 parallel session state revealed", V,
       then(v2_base,
            [](Game& g) {
              honest_v2(g, 2);
              g.rev_state(1, 2, {0, 0});
            }),
       t(2, 0), false},
      {"v2 replica responder key revealed", V,
       [](Game& g) {
         pair_up(g, 1, 2, 1, 1);
         g.send(2, 2, input::Activate{1, Role::Responder});
         const auto m = transmit(g, 1, 1, "m0");
         deliver(g, 2, 1, m);
         deliver(g, 2, 2, m);
         g.rev_sesskey(2, 2, {0, 0});
       },
       t(2, 0), true},
      {"v2 initiator receive stage, partner key revealed", V,
       then(v2_base, [](Game& g) { g.rev_sesskey(2, 1, {1, 0}); }), t(1, 1), false},
      {"v2 initiator receive stage, earlier partner key revealed", V,
       then(v2_base, [](Game& g) { g.rev_sesskey(2, 1, {0, 0}); }), t(1, 1), true},
      {"v2 dropped message breaks the match", V,
       [](Game& g) {
         pair_up(g, 1, 2, 1, 1);
         transmit(g, 1, 1, "dropped");
         deliver(g, 2, 1, transmit(g, 1, 1, "kept"));
         g.rev_sesskey(1, 1, {0, 0});
       },
       t(2, 0), true},
      {"v2 partner key revealed at initiator send stage", V,
       then(v2_base, [](Game& g) { g.rev_sesskey(2, 1, {0, 0}); }), t(1, 0), false},
      {"v2 partner long-term key revealed at initiator", V, then(v2_base, [](Game& g) { g.rev_ltk(2); }), t(1, 1),
       false},
  };
}

inline void vdr_base(Game& g) { honest_vdr(g); }

inline std::vector<PredicateCase> vdr_cases() {
  const auto D = Protocol::VDR;
  auto t = [](PartyId u, std::uint32_t x, std::uint32_t y) { return Tested{u, 1, {x, y}}; };
  return {
      {"vdr honest first stage", D, vdr_base, t(2, 0, 0), true},
      {"vdr initiator long-term key revealed", D, then(vdr_base, [](Game& g) { g.rev_ltk(1); }), t(2, 0, 0), true},
      {"vdr initiator key and first ephemeral revealed", D,
       then(vdr_base,
            [](Game& g) {
              g.rev_ltk(1);
              g.rev_rand(1, 1, {0, 0});
            }),
       t(2, 0, 0), false},
      {"vdr responder long-term key revealed", D, then(vdr_base, [](Game& g) { g.rev_ltk(2); }), t(2, 0, 0), false},
      {"vdr initiator tested, own long-term key revealed", D, then(vdr_base, [](Game& g) { g.rev_ltk(1); }),
       t(1, 0, 0), true},
      {"vdr initiator tested, peer long-term key revealed", D, then(vdr_base, [](Game& g) { g.rev_ltk(2); }),
       t(1, 0, 0), false},
      {"vdr first ephemeral alone revealed", D, then(vdr_base, [](Game& g) { g.rev_rand(1, 1, {0, 0}); }),
       t(2, 0, 0), true},
      {"vdr own earlier chain state revealed", D, then(vdr_base, [](Game& g) { g.rev_state(2, 1, {0, 0}); }),
       t(2, 0, 1), false},
      {"vdr partner earlier chain state revealed", D, then(vdr_base, [](Game& g) { g.rev_state(1, 1, {0, 0}); }),
       t(2, 0, 1), false},
      {"vdr later chain state revealed", D, then(vdr_base, [](Game& g) { g.rev_state(2, 1, {0, 1}); }), t(2, 0, 0),
       true},
      {"vdr partner stage key revealed", D, then(vdr_base, [](Game& g) { g.rev_sesskey(1, 1, {0, 0}); }),
       t(2, 0, 0), false},
      {"vdr earlier stage key revealed", D, then(vdr_base, [](Game& g) { g.rev_sesskey(2, 1, {0, 0}); }),
       t(2, 0, 1), true},
      {"vdr first reply epoch honest", D, vdr_base, t(1, 1, 0), true},
      {"vdr first reply epoch, both long-term keys revealed", D,
       then(vdr_base,
            [](Game& g) {
              g.rev_ltk(1);
              g.rev_ltk(2);
            }),
       t(1, 1, 0), true},
      {"vdr first reply epoch, both ephemerals revealed", D,
       then(vdr_base,
            [](Game& g) {
              g.rev_rand(1, 1, {0, 0});
              g.rev_rand(2, 1, {1, 0});
            }),
       t(1, 1, 0), true},
      {"vdr first reply epoch, ephemerals and initiator key revealed", D,
       then(vdr_base,
            [](Game& g) {
              g.rev_rand(1, 1, {0, 0});
              g.rev_rand(2, 1, {1, 0});
              g.rev_ltk(1);
            }),
       t(1, 1, 0), false},
      {"vdr first reply epoch, ephemerals and prior state revealed", D,
       then(vdr_base,
            [](Game& g) {
              g.rev_rand(1, 1, {0, 0});
              g.rev_rand(2, 1, {1, 0});
              g.rev_state(2, 1, {0, 0});
            }),
       t(1, 1, 0), false},
      {"vdr second reply epoch honest", D, vdr_base, t(2, 2, 0), true},
      {"vdr state before a fresh ratchet revealed", D,
       then(vdr_base,
            [](Game& g) {
              g.rev_state(2, 1, {1, 1});
              g.rev_state(2, 1, {0, 0});
            }),
       t(2, 2, 0), true},
      {"vdr own reply ephemeral revealed", D, then(vdr_base, [](Game& g) { g.rev_rand(2, 1, {1, 0}); }), t(2, 2, 0),
       true},
      {"vdr own reply ephemeral and its state revealed", D,
       then(vdr_base,
            [](Game& g) {
              g.rev_rand(2, 1, {1, 0});
              g.rev_state(2, 1, {1, 0});
            }),
       t(2, 2, 0), false},
      {"vdr chain head state revealed", D, then(vdr_base, [](Game& g) { g.rev_state(2, 1, {2, 0}); }), t(2, 2, 1),
       false},
      {"vdr state from an older epoch revealed", D, then(vdr_base, [](Game& g) { g.rev_state(2, 1, {1, 0}); }),
       t(2, 2, 1), true},
      {"vdr impersonated initiator", D, forged_vdr, Tested{2, 2, {0, 0}}, false},
      {"vdr partner key revealed in a later epoch", D, then(vdr_base, [](Game& g) { g.rev_sesskey(1, 1, {2, 0}); }),
       t(2, 2, 0), false},
      {"vdr initiator send stage, own ephemeral revealed", D,
       then(vdr_base, [](Game& g) { g.rev_rand(1, 1, {2, 0}); }), t(1, 2, 1), true},
      {"vdr two ephemerals revealed, peer long-term key revealed", D,
       then(vdr_base,
            [](Game& g) {
              g.rev_rand(1, 1, {2, 0});
              g.rev_rand(2, 1, {1, 0});
              g.rev_ltk(2);
            }),
       t(1, 2, 0), false},
      {"vdr two ephemerals revealed", D,
       then(vdr_base,
            [](Game& g) {
              g.rev_rand(1, 1, {2, 0});
              g.rev_rand(2, 1, {1, 0});
            }),
       t(1, 2, 0), true},
  };
}

struct Verdict {
  bool accepted = false;
  bool fresh = false;
};

inline Verdict evaluate(const PredicateCase& c) {
  Game g(c.protocol, kParties, kSeed);
  c.script(g);
  const auto* rec = g.log().find(c.target.u, c.target.i);
  return {rec && rec->accepted(c.target.s), g.fresh(c.target)};
}

}  // namespace tables
