#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "letterseal/mske/game.hpp"

namespace letterseal::mske {

struct AttackReport {
  std::string name;
  std::uint64_t seed = 0;
  bool succeeded = false;
  bool violated_freshness = false;
  // Scenario-specific counters: messages attacked and messages broken.
  std::uint32_t attempts = 0;
  std::uint32_t broken = 0;
  // pcs_vdr only: keys the adversary is expected to reach were reached.
  std::optional<bool> control_held;
  std::string detail;
  QueryTrace trace;
};

struct AttackExpectation {
  bool succeeded = false;
  bool violated_freshness = false;
};

const std::vector<std::string_view>& attack_names();
std::optional<AttackExpectation> expected_outcome(std::string_view name);
bool matches_expectation(const AttackReport& r);

// Throws UnknownAttack for names outside attack_names().
AttackReport run_attack(std::string_view name, std::uint64_t seed);

}  // namespace letterseal::mske
