#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "letterseal/bytes.hpp"

namespace letterseal {

// One known-answer line: `name in1 in2 ... out`, hex fields, "-" for empty.
struct KatRecord {
  std::string name;
  std::vector<Bytes> inputs;
  Bytes output;
};

std::vector<KatRecord> parse_kat_file(std::string_view text);
std::string format_kat(const std::vector<KatRecord>& records);

// Runs the named computation on the record inputs. Throws NotFound for
// names it does not know.
Bytes compute_kat(const std::string& name, const std::vector<Bytes>& inputs);

struct KatResult {
  KatRecord record;
  Bytes actual;
  bool ok = false;
  std::string error;
};
std::vector<KatResult> check_kats(const std::vector<KatRecord>& records);

// The input set of the frozen vector file, with outputs computed here.
std::vector<KatRecord> builtin_kats();

// Seeded envelopes and packets of every layout, one record per fixture with
// no inputs. Used as byte-stability goldens.
std::vector<KatRecord> golden_fixtures(std::uint64_t seed = 1);

}  // namespace letterseal
