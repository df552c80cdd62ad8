// letterseal: demo conversations, attack scenarios, benchmarks, KAT vectors
// and packet parsing.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "letterseal/bench.hpp"
#include "letterseal/directory.hpp"
#include "letterseal/error.hpp"
#include "letterseal/kat.hpp"
#include "letterseal/linev1.hpp"
#include "letterseal/linev2.hpp"
#include "letterseal/linevdr.hpp"
#include "letterseal/mske/attacks.hpp"
#include "letterseal/packet.hpp"
#include "letterseal/wire.hpp"

using namespace letterseal;
using nlohmann::json;

namespace {

enum class Format { Text, JsonLines };

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LETTERSEAL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric LETTERSEAL_SEED\n";
    }
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  out << data;
}

// ---- demo

int cmd_demo(const std::string& protocol, std::uint32_t messages, std::uint64_t seed, Format fmt) {
  SeededRandom rng(seed);
  KeyDirectory dir;
  Relay relay;
  const auto alice = dh_keygen(rng);
  const auto bob = dh_keygen(rng);
  const auto kid_a = dir.register_key(alice.pub, "alice");
  const auto kid_b = dir.register_key(bob.pub, "bob");

  auto emit = [&](std::uint32_t n, const char* from, const char* to, const std::string& stage, bool ok,
                  std::size_t bytes) {
    if (fmt == Format::JsonLines) {
      std::cout << json{{"msg", n}, {"from", from}, {"to", to}, {"stage", stage}, {"bytes", bytes}, {"ok", ok}}.dump()
                << '\n';
    } else {
      std::cout << "msg " << std::setw(2) << n << "  " << from << " -> " << to << "  " << stage << "  " << bytes
                << " bytes  " << (ok ? "round-trip ok" : "MISMATCH") << '\n';
    }
  };
  auto text_of = [](std::uint32_t n) { return "demo message " + std::to_string(n); };
  bool all_ok = true;

  if (protocol == "v1") {
    auto sa = v1_establish(alice.secret, dir.lookup(kid_b), kid_a, kid_b);
    auto sb = v1_establish(bob.secret, dir.lookup(kid_a), kid_b, kid_a);
    for (std::uint32_t n = 0; n < messages; ++n) {
      const auto m = text_of(n);
      relay.post("bob", encode_envelope(v1_encrypt(sa, 0, as_bytes(m), rng)));
      for (const auto& b : relay.drain("bob")) {
        auto pt = v1_decrypt(sb, decode_as<EnvelopeV1>(b));
        const bool ok = pt == Bytes(m.begin(), m.end());
        all_ok &= ok;
        emit(n, "alice", "bob", "salt=" + to_hex(decode_as<EnvelopeV1>(b).salt), ok, b.size());
      }
    }
  } else if (protocol == "v2") {
    auto sa = v2_establish(alice.secret, dir.lookup(kid_b), V2Identity{"alice", "bob", kid_a, kid_b});
    auto sb = v2_establish(bob.secret, dir.lookup(kid_a), V2Identity{"bob", "alice", kid_b, kid_a});
    for (std::uint32_t n = 0; n < messages; ++n) {
      const auto m = text_of(n);
      const auto ctr = sa.ctr;
      relay.post("bob", encode_envelope(v2_encrypt(sa, 0, as_bytes(m), rng)));
      for (const auto& b : relay.drain("bob")) {
        const bool ok = v2_decrypt(sb, decode_as<EnvelopeV2>(b)) == Bytes(m.begin(), m.end());
        all_ok &= ok;
        emit(n, "alice", "bob", "ctr=" + std::to_string(ctr), ok, b.size());
      }
    }
  } else if (protocol == "vdr") {
    auto sa = vdr_init_sender(VdrParty{alice.secret, dir.lookup(kid_b), kid_a, kid_b}, rng);
    std::optional<RatchetState> sb;
    const VdrParty bob_party{bob.secret, dir.lookup(kid_a), kid_b, kid_a};
    // Bursts of two, alternating senders.
    for (std::uint32_t n = 0; n < messages; ++n) {
      const bool from_alice = (n / 2) % 2 == 0;
      const auto m = text_of(n);
      auto& sender = from_alice ? sa : *sb;
      const auto sealed = vdr_seal(sender, 0, as_bytes(m), rng);
      const char* to = from_alice ? "bob" : "alice";
      relay.post(to, encode_envelope(sealed.envelope));
      for (const auto& b : relay.drain(to)) {
        const auto env = decode_as<EnvelopeVDR>(b);
        if (from_alice && !sb) sb = vdr_lazy_init_receiver(bob_party, env);
        auto& receiver = from_alice ? *sb : sa;
        const bool ok = vdr_decrypt(receiver, env, rng) == Bytes(m.begin(), m.end());
        all_ok &= ok;
        emit(n, from_alice ? "alice" : "bob", to,
             "stage=[" + std::to_string(sealed.stage.i) + "," + std::to_string(sealed.stage.j) + "]", ok, b.size());
      }
    }
  } else {
    std::cerr << "unknown protocol '" << protocol << "' (v1, v2, vdr)\n";
    return 2;
  }
  return all_ok ? 0 : 1;
}

// ---- attack

void print_report(const mske::AttackReport& r, bool show_trace, Format fmt) {
  const auto e = mske::expected_outcome(r.name);
  const bool ok = mske::matches_expectation(r);
  if (fmt == Format::JsonLines) {
    json j{{"attack", r.name},         {"seed", r.seed},         {"succeeded", r.succeeded},
           {"violated_freshness", r.violated_freshness},       {"attempts", r.attempts},
           {"broken", r.broken},       {"detail", r.detail},     {"matches_expectation", ok}};
    if (r.control_held) j["control_held"] = *r.control_held;
    if (show_trace) j["trace"] = r.trace.to_text();
    std::cout << j.dump() << '\n';
    return;
  }
  std::cout << "attack     " << r.name << "\n"
            << "seed       " << r.seed << "\n"
            << "result     " << (r.succeeded ? "succeeded" : "defended") << ", freshness "
            << (r.violated_freshness ? "violated" : "intact") << "\n"
            << "detail     " << r.detail << "\n";
  if (r.control_held) std::cout << "control    " << (*r.control_held ? "held" : "FAILED") << "\n";
  std::cout << "expected   " << (e->succeeded ? "succeeded" : "defended") << ", freshness "
            << (e->violated_freshness ? "violated" : "intact") << "\n"
            << "verdict    " << (ok ? "matches expectation" : "DOES NOT MATCH expectation") << "\n";
  if (show_trace) std::cout << "trace\n" << r.trace.to_text();
}

int cmd_attack(const std::string& name, std::uint64_t seed, std::uint32_t trials, bool show_trace, Format fmt) {
  if (!mske::expected_outcome(name)) {
    std::cerr << "unknown attack '" << name << "'; known:";
    for (auto n : mske::attack_names()) std::cerr << ' ' << n;
    std::cerr << '\n';
    return 2;
  }
  std::uint32_t matched = 0, succeeded = 0, violated = 0;
  for (std::uint32_t t = 0; t < trials; ++t) {
    const auto r = mske::run_attack(name, seed + t);
    matched += mske::matches_expectation(r) ? 1 : 0;
    succeeded += r.succeeded ? 1 : 0;
    violated += r.violated_freshness ? 1 : 0;
    if (trials == 1 || fmt == Format::JsonLines) print_report(r, show_trace, fmt);
  }
  if (trials > 1 && fmt == Format::Text) {
    std::cout << "attack     " << name << "\n"
              << "trials     " << trials << " (seeds " << seed << ".." << seed + trials - 1 << ")\n"
              << "succeeded  " << succeeded << "/" << trials << "\n"
              << "violated   " << violated << "/" << trials << "\n"
              << "matched    " << matched << "/" << trials << "\n";
  }
  return matched == trials ? 0 : 1;
}

// ---- bench

int cmd_bench(std::uint32_t iterations, std::uint64_t seed, Format fmt) {
  if (iterations < 100) {
    std::cerr << "bench needs at least 100 iterations\n";
    return 2;
  }
  const auto report = run_bench(iterations, seed);
  if (fmt == Format::JsonLines) {
    for (const auto& r : report.rows) {
      std::cout << json{{"scenario", r.scenario}, {"e2e_us", r.e2e_avg}, {"enc_us", r.enc_avg},
                        {"dec_us", r.dec_avg},     {"stddev_us", r.stddev}, {"iterations", r.iterations}}
                       .dump()
                << '\n';
    }
    for (const auto& c : report.costs) {
      std::cout << json{{"scenario", c.scenario}, {"op", c.op}, {"count", c.count_per_message}, {"unit_us", c.unit_cost}}
                       .dump()
                << '\n';
    }
    return 0;
  }
  std::cout << "wall time per message (us), " << iterations << " iterations, " << report.message_size
            << "-byte messages\n";
  std::cout << std::left << std::setw(10) << "scenario" << std::right << std::setw(11) << "e2e" << std::setw(11)
            << "enc" << std::setw(11) << "dec" << std::setw(11) << "stddev" << '\n';
  std::cout << std::fixed << std::setprecision(2);
  for (const auto& r : report.rows) {
    std::cout << std::left << std::setw(10) << r.scenario << std::right << std::setw(11) << r.e2e_avg
              << std::setw(11) << r.enc_avg << std::setw(11) << r.dec_avg << std::setw(11) << r.stddev << '\n';
  }
  std::cout << "\ncryptographic cost per message (count x unit us)\n";
  std::cout << std::left << std::setw(10) << "scenario" << std::right << std::setw(16) << "DH" << std::setw(16) << "KDF"
            << std::setw(16) << "AEAD" << '\n';
  for (std::size_t k = 0; k < report.costs.size(); k += 3) {
    std::cout << std::left << std::setw(10) << report.costs[k].scenario << std::right;
    for (std::size_t o = 0; o < 3; ++o) {
      const auto& c = report.costs[k + o];
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(2);
      if (c.count_per_message == 0) {
        cell << "-";
      } else {
        cell << c.count_per_message << " x " << c.unit_cost;
      }
      std::cout << std::setw(16) << cell.str();
    }
    std::cout << '\n';
  }
  const auto ratio = [&](const char* a, const char* b) { return find_row(report, a).e2e_avg / find_row(report, b).e2e_avg; };
  std::cout << "\nratios  v2-first/v2-ith " << ratio("v2-first", "v2-ith") << "x   vdr-init/vdr-sym "
            << ratio("vdr-init", "vdr-sym") << "x\n";
  return 0;
}

// ---- vectors

int cmd_vectors(const std::string& out, const std::string& check, const std::string& golden) {
  if (!check.empty()) {
    const auto results = check_kats(parse_kat_file(read_file(check)));
    std::size_t passed = 0;
    for (const auto& r : results) {
      if (r.ok) {
        ++passed;
        continue;
      }
      std::cout << "FAIL " << r.record.name << ": "
                << (r.error.empty() ? "got " + to_hex(r.actual) + " want " + to_hex(r.record.output) : r.error) << '\n';
    }
    std::cout << passed << "/" << results.size() << " vectors match\n";
    return passed == results.size() && !results.empty() ? 0 : 1;
  }
  const auto golden_text = [] {
    std::string s = "# fixture bytes (hex), seed 1\n";
    for (const auto& r : golden_fixtures(1)) s += r.name + " " + to_hex(r.output) + "\n";
    return s;
  };
  if (!golden.empty()) write_file(golden, golden_text());
  const auto text = format_kat(builtin_kats());
  if (!out.empty()) {
    write_file(out, text);
  } else if (golden.empty()) {
    std::cout << text;
  }
  return 0;
}

// ---- parse

void row(const std::string& k, const std::string& v) { std::cout << std::left << std::setw(18) << k << v << '\n'; }

int cmd_parse(const std::string& path) {
  const auto bytes = from_hex(read_file(path));
  if (looks_like_packet(bytes)) {
    const auto p = decode_packet(bytes);
    const auto cls = classify_packet(p);
    row("kind", "packet");
    row("class", std::string(packet_class_name(cls)));
    const auto& h = p.header;
    row("from", std::to_string(h.from));
    row("to", std::to_string(h.to));
    row("toType", std::to_string(h.to_type));
    row("id", std::to_string(h.id));
    row("createdTime", std::to_string(h.created_time));
    row("deliveredTime", std::to_string(h.delivered_time));
    row("hasContent", h.has_content ? "true" : "false");
    row("contentType", std::to_string(h.content_type));
    row("sessionId", std::to_string(h.session_id));
    if (p.e2ee) {
      row("e2eeVersion", std::to_string(p.e2ee->e2ee_version));
      row("seq", std::to_string(p.e2ee->seq));
    }
    if (p.bot) {
      row("BOT_TAG2", to_hex(p.bot->bot_tag2));
      row("BOT_ORIGIN", p.bot->bot_origin);
      row("BOT_CHECK", p.bot->bot_check ? "true" : "false");
      row("BOT_TRACK", p.bot->bot_track);
    }
    if (p.text) row("text", *p.text);
    if (p.chunks && cls == PacketClass::UserE2EE) {
      const auto c = parse_chunks(*p.chunks);
      row("chunks[0] salt", to_hex(c.salt));
      row("chunks[1] ct", std::to_string(c.ciphertext.size()) + " bytes");
      row("chunks[2] nonce", to_hex(c.nonce_material));
      row("chunks[3] kid_A", std::to_string(c.kid_a));
      row("chunks[4] kid_B", std::to_string(c.kid_b));
    }
    return 0;
  }
  const auto env = decode_envelope(bytes);
  row("kind", "envelope");
  std::visit(
      [](const auto& e) {
        row("vers", std::to_string(e.vers));
        row("ctype", std::to_string(e.ctype));
        row("kid_sender", std::to_string(e.kid_sender));
        row("kid_receiver", std::to_string(e.kid_receiver));
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, EnvelopeV1>) {
          row("salt", to_hex(e.salt));
          row("tag", to_hex(e.tag));
        } else if constexpr (std::is_same_v<T, EnvelopeV2>) {
          row("salt", to_hex(e.salt));
          row("nonce_material", to_hex(e.nonce_material));
          row("sid", e.sid);
          row("rid", e.rid);
        } else {
          row("stage", "[" + std::to_string(e.i_index()) + "," + std::to_string(e.j_index) + "]");
          row("eph_pub", to_hex(e.eph_pub.view()));
          row("nonce_material", to_hex(e.nonce_material));
        }
        row("ciphertext", std::to_string(e.ciphertext.size()) + " bytes");
      },
      env);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LINE Letter Sealing v1, v2 and vDR toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();
  std::string format = "text";
  app.add_option("--seed", seed, "RNG seed (default: $LETTERSEAL_SEED or 1)");
  app.add_option("--format", format, "text | json-lines")->check(CLI::IsMember({"text", "json-lines"}));

  auto* demo = app.add_subcommand("demo", "run a two-party conversation through the relay");
  std::string protocol = "vdr";
  std::uint32_t messages = 6;
  demo->add_option("--protocol", protocol, "v1 | v2 | vdr");
  demo->add_option("--messages", messages, "number of messages");

  auto* attack = app.add_subcommand("attack", "run a scripted adversary against the game harness");
  std::string attack_name;
  std::uint32_t trials = 1;
  bool show_trace = false;
  attack->add_option("name", attack_name, "attack name")->required();
  attack->add_option("--trials", trials, "run seeds seed..seed+trials-1")->check(CLI::PositiveNumber);
  attack->add_flag("--trace", show_trace, "print the oracle query trace");

  auto* bench = app.add_subcommand("bench", "microbenchmarks");
  std::uint32_t iterations = 100;
  bench->add_option("--iterations", iterations, "measured iterations (>= 100)");

  auto* vectors = app.add_subcommand("vectors", "emit or check known-answer vectors");
  std::string out_path, check_path, golden_path;
  vectors->add_option("--out", out_path, "write vectors here instead of stdout");
  vectors->add_option("--check", check_path, "check a vector file against this build");
  vectors->add_option("--golden", golden_path, "write seeded envelope and packet fixtures");

  auto* parse = app.add_subcommand("parse", "decode a hex envelope or packet fixture");
  std::string parse_path;
  parse->add_option("path", parse_path, "hex file")->required();

  for (auto* sub : {demo, attack, bench, vectors, parse}) {
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--format", format, "text | json-lines")->check(CLI::IsMember({"text", "json-lines"}));
  }

  CLI11_PARSE(app, argc, argv);
  const Format fmt = format == "json-lines" ? Format::JsonLines : Format::Text;

  try {
    if (*demo) return cmd_demo(protocol, messages, seed, fmt);
    if (*attack) return cmd_attack(attack_name, seed, trials, show_trace, fmt);
    if (*bench) return cmd_bench(iterations, seed, fmt);
    if (*vectors) return cmd_vectors(out_path, check_path, golden_path);
    if (*parse) return cmd_parse(parse_path);
  } catch (const Error& e) {
    std::cerr << "error: " << error_name(e.code()) << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
