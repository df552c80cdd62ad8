#include "letterseal/bench.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "letterseal/error.hpp"
#include "letterseal/linev2.hpp"
#include "letterseal/linevdr.hpp"
#include "letterseal/random.hpp"

namespace letterseal {

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::uint32_t kWarmup = 10;

double micros(Clock::duration d) { return std::chrono::duration<double, std::micro>(d).count(); }

struct Scenario {
  std::string name;
  std::function<void()> setup;
  std::function<void()> enc;
  std::function<void()> dec;
};

BenchRow measure(const Scenario& s, std::uint32_t iterations) {
  for (std::uint32_t k = 0; k < kWarmup; ++k) {
    s.setup();
    s.enc();
    s.dec();
  }
  BenchRow row;
  row.scenario = s.name;
  row.iterations = iterations;
  std::vector<double> e2e;
  e2e.reserve(iterations);
  OpCounters enc_ops, dec_ops;
  for (std::uint32_t k = 0; k < iterations; ++k) {
    s.setup();
    const auto c0 = op_counters();
    const auto t0 = Clock::now();
    s.enc();
    const auto t1 = Clock::now();
    const auto c1 = op_counters();
    s.dec();
    const auto t2 = Clock::now();
    const auto c2 = op_counters();
    // Counts must not depend on the iteration; keep the last one.
    enc_ops = c1 - c0;
    dec_ops = c2 - c1;
    row.enc_avg += micros(t1 - t0);
    row.dec_avg += micros(t2 - t1);
    e2e.push_back(micros(t2 - t0));
  }
  row.enc_avg /= iterations;
  row.dec_avg /= iterations;
  for (double v : e2e) row.e2e_avg += v;
  row.e2e_avg /= iterations;
  double var = 0;
  for (double v : e2e) var += (v - row.e2e_avg) * (v - row.e2e_avg);
  row.stddev = std::sqrt(var / iterations);
  row.enc_ops = enc_ops;
  row.dec_ops = dec_ops;
  return row;
}

template <typename F>
double unit_cost(std::uint32_t iterations, F f) {
  for (std::uint32_t k = 0; k < kWarmup; ++k) f();
  const auto t0 = Clock::now();
  for (std::uint32_t k = 0; k < iterations; ++k) f();
  return micros(Clock::now() - t0) / iterations;
}

}  // namespace

BenchReport run_bench(std::uint32_t iterations, std::uint64_t seed, std::size_t message_size) {
  if (iterations == 0) fail(ErrorCode::InvalidLength, "iterations must be positive");
  SeededRandom rng(seed);
  const auto alice = dh_keygen(rng);
  const auto bob = dh_keygen(rng);
  Bytes msg(message_size);
  rng.fill(msg);

  const V2Identity a_ids{"alice", "bob", 1, 2};
  const V2Identity b_ids{"bob", "alice", 2, 1};
  const VdrParty a_party{alice.secret, bob.pub, 1, 2};
  const VdrParty b_party{bob.secret, alice.pub, 2, 1};
  auto noop = [] {};

  BenchReport report;
  report.message_size = message_size;

  {
    SessionV2 sa, sb;
    EnvelopeV2 env;
    report.rows.push_back(measure(
        {"v2-first", noop,
         [&] {
           sa = v2_establish(alice.secret, bob.pub, a_ids);
           env = v2_encrypt(sa, 0, msg, rng);
         },
         [&] {
           sb = v2_establish(bob.secret, alice.pub, b_ids);
           (void)v2_decrypt(sb, env);
         }},
        iterations));
  }
  {
    auto sa = v2_establish(alice.secret, bob.pub, a_ids);
    auto sb = v2_establish(bob.secret, alice.pub, b_ids);
    EnvelopeV2 env;
    report.rows.push_back(measure({"v2-ith", noop, [&] { env = v2_encrypt(sa, 0, msg, rng); },
                                   [&] { (void)v2_decrypt(sb, env); }},
                                  iterations));
  }
  {
    RatchetState a, b;
    EnvelopeVDR env;
    report.rows.push_back(measure(
        {"vdr-init", noop,
         [&] {
           a = vdr_init_sender(a_party, rng);
           env = vdr_encrypt(a, 0, msg, rng);
         },
         [&] {
           b = vdr_lazy_init_receiver(b_party, env);
           (void)vdr_decrypt(b, env, rng);
         }},
        iterations));
  }
  {
    // Alice holds a fresh epoch-2 sending chain; Bob must ratchet on receipt.
    RatchetState a, b;
    EnvelopeVDR env;
    report.rows.push_back(measure(
        {"vdr-asym",
         [&] {
           a = vdr_init_sender(a_party, rng);
           auto e0 = vdr_encrypt(a, 0, msg, rng);
           b = vdr_lazy_init_receiver(b_party, e0);
           (void)vdr_decrypt(b, e0, rng);
           auto e1 = vdr_encrypt(b, 0, msg, rng);
           (void)vdr_decrypt(a, e1, rng);
         },
         [&] { env = vdr_encrypt(a, 0, msg, rng); }, [&] { (void)vdr_decrypt(b, env, rng); }},
        iterations));
  }
  {
    auto a = vdr_init_sender(a_party, rng);
    auto e0 = vdr_encrypt(a, 0, msg, rng);
    auto b = vdr_lazy_init_receiver(b_party, e0);
    (void)vdr_decrypt(b, e0, rng);
    EnvelopeVDR env;
    report.rows.push_back(measure(
        {"vdr-sym", noop, [&] { env = vdr_encrypt(a, 0, msg, rng); }, [&] { (void)vdr_decrypt(b, env, rng); }},
        iterations));
  }

  const double dh_cost = unit_cost(iterations, [&] { (void)dh(alice.secret, bob.pub); });
  const auto ck = SymmetricKey(rng.draw<32>());
  const double kdf_cost = unit_cost(iterations, [&] { (void)kdf_chain(ck); });
  const auto nonce = AeadNonce::from_material(rng.draw<8>());
  const double aead_cost = unit_cost(iterations, [&] { (void)aead_seal(ck, nonce, msg, {}); });

  for (const auto& row : report.rows) {
    const auto ops = row.scenario == "vdr-init"
                         ? row.enc_ops
                         : OpCounters{row.enc_ops.dh_keygen + row.dec_ops.dh_keygen,
                                      row.enc_ops.dh_agree + row.dec_ops.dh_agree, row.enc_ops.kdf + row.dec_ops.kdf,
                                      row.enc_ops.aead + row.dec_ops.aead};
    report.costs.push_back({row.scenario, "DH", static_cast<std::uint32_t>(ops.dh_total()), dh_cost});
    report.costs.push_back({row.scenario, "KDF", static_cast<std::uint32_t>(ops.kdf), kdf_cost});
    report.costs.push_back({row.scenario, "AEAD", static_cast<std::uint32_t>(ops.aead), aead_cost});
  }
  return report;
}

const BenchRow& find_row(const BenchReport& r, const std::string& scenario) {
  for (const auto& row : r.rows) {
    if (row.scenario == scenario) return row;
  }
  fail(ErrorCode::NotFound, "no bench row " + scenario);
}

}  // namespace letterseal
