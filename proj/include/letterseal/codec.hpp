#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "letterseal/bytes.hpp"
#include "letterseal/error.hpp"

namespace letterseal {

// Bounds-checked big-endian cursor. Every read names its field so decode
// failures point at the first bad one.
class Reader {
 public:
  explicit Reader(ByteView data) : data_(data) {}

  std::uint8_t u8(const char* field) { return take(1, field)[0]; }

  std::uint16_t u16(const char* field) {
    auto p = take(2, field);
    return static_cast<std::uint16_t>(p[0] << 8 | p[1]);
  }

  std::uint32_t u32(const char* field) { return load_be32(take(4, field)); }

  std::uint64_t u64(const char* field) {
    auto p = take(8, field);
    std::uint64_t v = 0;
    for (auto b : p) v = v << 8 | b;
    return v;
  }

  std::int64_t i64(const char* field) { return static_cast<std::int64_t>(u64(field)); }

  bool boolean(const char* field) {
    auto v = u8(field);
    if (v > 1) throw ParseError(field, "boolean byte must be 0 or 1");
    return v == 1;
  }

  ByteView bytes(std::size_t n, const char* field) { return take(n, field); }

  template <std::size_t N>
  ByteArray<N> array(const char* field) {
    auto p = take(N, field);
    ByteArray<N> out;
    std::copy(p.begin(), p.end(), out.begin());
    return out;
  }

  Bytes blob32(const char* field) {
    auto n = u32(field);
    if (n > remaining()) throw ParseError(field, "length field overflows buffer");
    auto p = take(n, field);
    return Bytes(p.begin(), p.end());
  }

  std::string str16(const char* field) {
    auto n = u16(field);
    if (n > remaining()) throw ParseError(field, "length field overflows buffer");
    auto p = take(n, field);
    return std::string(p.begin(), p.end());
  }

  std::size_t remaining() const { return data_.size() - pos_; }

  void finish(const char* what) const {
    if (remaining() != 0) throw ParseError(what, "trailing bytes after record");
  }

 private:
  ByteView take(std::size_t n, const char* field) {
    if (n > remaining()) throw ParseError(field, "truncated");
    auto p = data_.subspan(pos_, n);
    pos_ += n;
    return p;
  }

  ByteView data_;
  std::size_t pos_ = 0;
};

inline void put_str16(Bytes& out, const std::string& s, const char* field) {
  if (s.size() > std::numeric_limits<std::uint16_t>::max()) fail(ErrorCode::InvalidLength, field);
  put_u16(out, static_cast<std::uint16_t>(s.size()));
  append(out, as_bytes(s));
}

inline void put_blob32(Bytes& out, ByteView b, const char* field) {
  if (b.size() > std::numeric_limits<std::uint32_t>::max()) fail(ErrorCode::InvalidLength, field);
  put_u32(out, static_cast<std::uint32_t>(b.size()));
  append(out, b);
}

}  // namespace letterseal
