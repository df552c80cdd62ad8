#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "letterseal/bytes.hpp"

namespace testsupport {

inline std::string data_path(const std::string& name) { return std::string(LETTERSEAL_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline letterseal::Bytes bytes_of(const std::string& s) { return letterseal::Bytes(s.begin(), s.end()); }

// name -> hex lines of tests/data/golden_fixtures.txt
inline std::string golden_hex(const std::string& name) {
  std::istringstream in(read_text(data_path("golden_fixtures.txt")));
  std::string n, hex;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ls >> n >> hex;
    if (n == name) return hex;
  }
  return {};
}

}  // namespace testsupport
