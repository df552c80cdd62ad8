#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "letterseal/crypto.hpp"

namespace letterseal {

struct BenchRow {
  std::string scenario;
  double e2e_avg = 0;  // microseconds
  double enc_avg = 0;
  double dec_avg = 0;
  double stddev = 0;  // of e2e samples
  std::uint32_t iterations = 0;
  OpCounters enc_ops;  // per message
  OpCounters dec_ops;
};

struct OpCostRow {
  std::string scenario;
  std::string op;  // DH | KDF | AEAD
  std::uint32_t count_per_message = 0;
  double unit_cost = 0;  // microseconds
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<OpCostRow> costs;
  std::size_t message_size = 0;
};

// Scenarios: v2-first, v2-ith, vdr-init, vdr-asym, vdr-sym. Counted scope
// for the op-cost rows: e2e for every scenario except vdr-init, which
// counts the sender side (initialization plus first encryption).
BenchReport run_bench(std::uint32_t iterations, std::uint64_t seed, std::size_t message_size = 256);

const BenchRow& find_row(const BenchReport& r, const std::string& scenario);

}  // namespace letterseal
