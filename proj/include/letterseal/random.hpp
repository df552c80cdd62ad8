#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "letterseal/bytes.hpp"

namespace letterseal {

class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  template <std::size_t N>
  ByteArray<N> draw() {
    ByteArray<N> out;
    fill(out);
    return out;
  }
};

// ChaCha20 keystream. key = 0^24 || be64(seed); stream picks the nonce, so
// (seed, 0) and (seed, 1) are independent sequences.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed, std::uint64_t stream = 0);
  ~SeededRandom() override;
  SeededRandom(SeededRandom&&) noexcept;
  SeededRandom& operator=(SeededRandom&&) noexcept;
  SeededRandom(const SeededRandom&) = delete;
  SeededRandom& operator=(const SeededRandom&) = delete;

  void fill(std::span<std::uint8_t> out) override;
  std::uint64_t next_u64();
  std::uint64_t uniform(std::uint64_t bound);  // [0, bound)

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Replays a fixed byte string; throws Exhausted when drained.
class FixedRandom final : public RandomSource {
 public:
  explicit FixedRandom(Bytes data) : data_(std::move(data)) {}
  void fill(std::span<std::uint8_t> out) override;
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  Bytes data_;
  std::size_t pos_ = 0;
};

class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

}  // namespace letterseal
