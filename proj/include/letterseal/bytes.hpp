#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace letterseal {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

template <std::size_t N>
using ByteArray = std::array<std::uint8_t, N>;

std::string to_hex(ByteView data);
// Accepts upper or lower case; whitespace is skipped. Throws InvalidLength/ParseError.
Bytes from_hex(std::string_view text);

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline void append(Bytes& out, ByteView data) { out.insert(out.end(), data.begin(), data.end()); }

void put_u16(Bytes& out, std::uint16_t v);
void put_u32(Bytes& out, std::uint32_t v);
void put_u64(Bytes& out, std::uint64_t v);

std::uint32_t load_be32(ByteView p);

[[noreturn]] void fail_length(std::size_t want, std::size_t got);

// Throws InvalidLength when v.size() != N.
template <std::size_t N>
ByteArray<N> to_array(ByteView v) {
  if (v.size() != N) fail_length(N, v.size());
  ByteArray<N> out;
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

// Fixed-width byte strings tagged by role so a chain key cannot be passed
// where a group element is expected.
template <typename Tag, std::size_t N>
struct FixedBytes {
  static constexpr std::size_t size = N;
  ByteArray<N> bytes{};

  FixedBytes() = default;
  explicit FixedBytes(const ByteArray<N>& b) : bytes(b) {}
  static FixedBytes from(ByteView v) { return FixedBytes(to_array<N>(v)); }

  ByteView view() const { return bytes; }
  const std::uint8_t* data() const { return bytes.data(); }
  std::string hex() const { return to_hex(bytes); }

  friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
  friend bool operator==(const FixedBytes&, const FixedBytes&) = default;
};

// Secure-ish wipe that the optimizer will not drop.
void wipe(std::span<std::uint8_t> data);

}  // namespace letterseal
