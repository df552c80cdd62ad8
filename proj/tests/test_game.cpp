#include <catch_amalgamated.hpp>

#include "letterseal/error.hpp"
#include "letterseal/mske/game.hpp"
#include "letterseal/wire.hpp"

using namespace letterseal;
using namespace letterseal::mske;

namespace {

const input::Activate init_to(PartyId pid) { return {pid, Role::Initiator}; }
const input::Activate resp_to(PartyId pid) { return {pid, Role::Responder}; }
input::Transmit say(std::string_view text) { return {0, Bytes(text.begin(), text.end())}; }

void pair_up(Game& g) {
  REQUIRE(g.send(1, 1, init_to(2)).error.empty());
  REQUIRE(g.send(2, 1, resp_to(1)).error.empty());
}

Bytes exchange(Game& g, PartyId from, PartyId to, std::string_view text) {
  auto out = g.send(from, 1, say(text));
  REQUIRE(out.response);
  auto in = g.send(to, 1, input::Deliver{*out.response});
  REQUIRE(in.accepted);
  return *out.response;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

std::uint64_t seed_with_bit(Protocol p, bool bit) {
  for (std::uint64_t seed = 1;; ++seed) {
    if (Game(p, 2, seed).challenge_bit() == bit) return seed;
  }
}

}  // namespace

TEST_CASE("honest v2 exchange gives both sides the same stage keys") {
  Game g(Protocol::V2, 3, 1);
  pair_up(g);
  exchange(g, 1, 2, "hi");
  exchange(g, 2, 1, "hello");
  for (std::uint32_t x = 0; x < 2; ++x) {
    CHECK(g.log().find(1, 1)->accepted({x, 0}));
    CHECK(g.log().find(2, 1)->accepted({x, 0}));
    CHECK(g.log().find(1, 1)->key.at({x, 0}) == g.log().find(2, 1)->key.at({x, 0}));
  }
  CHECK(g.log().find(1, 1)->rand.at({0, 0}).size() == 20);
  CHECK_FALSE(g.log().find(2, 1)->rand.contains({0, 0}));
}

TEST_CASE("a substituted ciphertext is rejected at its stage") {
  Game g(Protocol::V2, 2, 2);
  pair_up(g);
  auto out = g.send(1, 1, say("payload"));
  auto bytes = *out.response;
  bytes.back() ^= 1;
  auto in = g.send(2, 1, input::Deliver{bytes});
  CHECK_FALSE(in.accepted);
  REQUIRE(in.stage);
  CHECK(g.log().find(2, 1)->status.at(*in.stage) == StageStatus::Reject);
  CHECK(in.error == "AuthFailure");
  CHECK(code_of([&] { (void)g.rev_sesskey(2, 1, *in.stage); }) == ErrorCode::StageNotAccepted);
}

TEST_CASE("vDR stages follow epochs and chain indices") {
  Game g(Protocol::VDR, 2, 3);
  pair_up(g);
  auto a = g.send(1, 1, say("a"));
  auto b = g.send(1, 1, say("b"));
  CHECK(*a.stage == StageIndex{0, 0});
  CHECK(*b.stage == StageIndex{0, 1});
  CHECK(g.send(2, 1, input::Deliver{*a.response}).accepted);
  CHECK(g.send(2, 1, input::Deliver{*b.response}).accepted);
  auto c = g.send(2, 1, say("c"));
  CHECK(*c.stage == StageIndex{1, 0});
  CHECK(g.send(1, 1, input::Deliver{*c.response}).accepted);
  for (auto s : {StageIndex{0, 0}, StageIndex{0, 1}, StageIndex{1, 0}}) {
    CHECK(g.log().find(1, 1)->key.at(s) == g.log().find(2, 1)->key.at(s));
  }
  const auto& r = g.log().find(1, 1)->rand.at({0, 0});
  REQUIRE(r.size() == 36);
  const auto env = decode_as<EnvelopeVDR>(*a.response);
  CHECK(dh_to_public(GroupScalar::from(ByteView(r).first(32))) == env.eph_pub);
  CHECK(g.log().find(2, 1)->rand.at({1, 0}).size() == 36);
}

TEST_CASE("a vDR replay is refused without undoing the accepted stage") {
  Game g(Protocol::VDR, 2, 4);
  pair_up(g);
  const auto bytes = exchange(g, 1, 2, "x");
  auto again = g.send(2, 1, input::Deliver{bytes});
  CHECK_FALSE(again.accepted);
  CHECK(again.error == "ReplayRejected");
  CHECK(g.log().find(2, 1)->accepted({0, 0}));
}

TEST_CASE("undecodable vDR bytes claim no stage") {
  Game g(Protocol::VDR, 2, 5);
  pair_up(g);
  auto in = g.send(2, 1, input::Deliver{Bytes{3, 0, 1}});
  CHECK_FALSE(in.stage);
  CHECK_FALSE(in.error.empty());
  CHECK(g.log().find(2, 1)->status.empty());
}

TEST_CASE("send refuses malformed session use") {
  Game g(Protocol::VDR, 2, 6);
  CHECK(g.send(1, 1, init_to(1)).error == "invalid partner");
  CHECK(g.send(1, 1, init_to(7)).error == "invalid partner");
  CHECK(g.send(1, 1, say("x")).error == "no such session");
  pair_up(g);
  CHECK(g.send(1, 1, init_to(2)).error == "session already active");
  auto early = g.send(2, 1, say("x"));
  CHECK(early.error == "NotInitialized");
  CHECK_FALSE(early.stage);
  CHECK_THROWS_AS(g.send(3, 1, init_to(1)), Error);
}

TEST_CASE("reveal oracles report unknown stages") {
  Game g(Protocol::V2, 2, 7);
  pair_up(g);
  CHECK(code_of([&] { (void)g.rev_sesskey(1, 9, {0, 0}); }) == ErrorCode::StageNotAccepted);
  CHECK(code_of([&] { (void)g.rev_sesskey(1, 1, {0, 0}); }) == ErrorCode::StageNotAccepted);
  CHECK(code_of([&] { (void)g.rev_state(1, 1, {0, 0}); }) == ErrorCode::StageUnknown);
  CHECK(code_of([&] { (void)g.rev_rand(1, 1, {0, 0}); }) == ErrorCode::StageUnknown);
  exchange(g, 1, 2, "m");
  CHECK(g.rev_rand(1, 1, {0, 0}).size() == 20);
  CHECK(g.rev_rand(2, 1, {0, 0}).empty());
  CHECK(v2_import_session(g.rev_state(2, 1, {0, 0})).sid == "party-2");
  CHECK(dh_to_public(g.rev_ltk(1)) == g.public_key(1));
  CHECK(g.log().rev_ltk.contains(1));
  CHECK(g.log().find(1, 1)->rev_rand.contains({0, 0}));
}

TEST_CASE("test answers once and only for accepted stages") {
  Game g(Protocol::V2, 2, 8);
  pair_up(g);
  CHECK_FALSE(g.test(1, 1, {0, 0}));
  exchange(g, 1, 2, "m");
  CHECK(g.test(2, 1, {0, 0}));
  CHECK_FALSE(g.test(1, 1, {0, 0}));
  REQUIRE(g.tested());
  CHECK(g.tested()->u == 2);
}

TEST_CASE("the challenge bit selects real or random keys") {
  for (bool bit : {false, true}) {
    Game g(Protocol::V2, 2, seed_with_bit(Protocol::V2, bit));
    pair_up(g);
    exchange(g, 1, 2, "m");
    const auto k = g.test(2, 1, {0, 0});
    REQUIRE(k);
    const auto real = g.rev_sesskey(1, 1, {0, 0});
    CHECK((*k == real) == !bit);
  }
}

TEST_CASE("finalize follows the game skeleton") {
  const auto seed = seed_with_bit(Protocol::V2, true);
  {
    Game g(Protocol::V2, 2, seed);
    CHECK(g.finalize(false).output == true);
    CHECK_FALSE(g.finalize(false).tested);
  }
  {
    Game g(Protocol::V2, 2, seed);
    pair_up(g);
    exchange(g, 1, 2, "m");
    REQUIRE(g.test(2, 1, {0, 0}));
    CHECK(g.finalize(true).fresh);
    CHECK(g.finalize(true).output);
    CHECK_FALSE(g.finalize(false).output);
    g.rev_sesskey(2, 1, {0, 0});
    CHECK_FALSE(g.finalize(false).fresh);
    CHECK(g.finalize(false).output == true);
  }
}

TEST_CASE("replaying a trace reproduces it") {
  for (auto p : {Protocol::V2, Protocol::VDR}) {
    Game g(p, 3, 9);
    pair_up(g);
    exchange(g, 1, 2, "one");
    exchange(g, 2, 1, "two");
    g.send(3, 1, input::Deliver{Bytes{1}});
    try {
      g.rev_state(1, 4, {0, 0});
    } catch (const Error&) {
    }
    g.rev_rand(1, 1, {0, 0});
    g.test(1, 1, {0, 0});
    g.rev_ltk(3);
    g.test(2, 1, {0, 0});
    const auto text = g.trace().to_text();
    CHECK(replay_trace(g.trace(), 3, 9).to_text() == text);
    CHECK(text.find("rev_ltk u=3 -> ") != std::string::npos);
    CHECK(text.find("error StageUnknown") != std::string::npos);
  }
}

TEST_CASE("the harness runs the same computation as the library") {
  const std::uint64_t seed = 10;
  SeededRandom ltk(seed, 2), rng(seed, 0);
  const auto k1 = dh_keygen(ltk);
  const auto k2 = dh_keygen(ltk);
  const Bytes m{'h', 'i'};

  SECTION("v2") {
    Game g(Protocol::V2, 2, seed);
    pair_up(g);
    auto out = g.send(1, 1, input::Transmit{0, m});
    auto s = v2_establish(k1.secret, k2.pub, V2Identity{"party-1", "party-2", 1, 2});
    auto sealed = v2_seal(s, 0, m, rng);
    CHECK(*out.response == encode_envelope(sealed.envelope));
    CHECK(g.log().find(1, 1)->key.at({0, 0}) == sealed.key);
  }
  SECTION("vdr") {
    Game g(Protocol::VDR, 2, seed);
    pair_up(g);
    auto out = g.send(1, 1, input::Transmit{0, m});
    auto st = vdr_init_sender(VdrParty{k1.secret, k2.pub, 1, 2}, rng);
    auto sealed = vdr_seal(st, 0, m, rng);
    CHECK(*out.response == encode_envelope(sealed.envelope));
    CHECK(g.log().find(1, 1)->key.at({0, 0}) == sealed.key);
    CHECK(g.log().find(1, 1)->state.at({0, 0}) == vdr_export_state(st));
  }
}
