#include "letterseal/random.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <algorithm>

#include "letterseal/error.hpp"

namespace letterseal {

struct SeededRandom::Impl {
  EVP_CIPHER_CTX* ctx = nullptr;
  ~Impl() { EVP_CIPHER_CTX_free(ctx); }
};

SeededRandom::SeededRandom(std::uint64_t seed, std::uint64_t stream) : impl_(std::make_unique<Impl>()) {
  ByteArray<32> key{};
  ByteArray<16> iv{};
  for (int i = 0; i < 8; ++i) {
    key[24 + i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
    iv[8 + i] = static_cast<std::uint8_t>(stream >> (56 - 8 * i));
  }
  impl_->ctx = EVP_CIPHER_CTX_new();
  if (!impl_->ctx || EVP_EncryptInit_ex(impl_->ctx, EVP_chacha20(), nullptr, key.data(), iv.data()) != 1) {
    throw std::runtime_error("chacha20 init failed");
  }
}

SeededRandom::~SeededRandom() = default;
SeededRandom::SeededRandom(SeededRandom&&) noexcept = default;
SeededRandom& SeededRandom::operator=(SeededRandom&&) noexcept = default;

void SeededRandom::fill(std::span<std::uint8_t> out) {
  std::fill(out.begin(), out.end(), 0);
  std::size_t done = 0;
  while (done < out.size()) {
    int chunk = static_cast<int>(std::min<std::size_t>(out.size() - done, 1 << 20));
    int len = 0;
    if (EVP_EncryptUpdate(impl_->ctx, out.data() + done, &len, out.data() + done, chunk) != 1) {
      throw std::runtime_error("chacha20 keystream failed");
    }
    done += static_cast<std::size_t>(len);
  }
}

std::uint64_t SeededRandom::next_u64() {
  auto b = draw<8>();
  std::uint64_t v = 0;
  for (auto x : b) v = v << 8 | x;
  return v;
}

std::uint64_t SeededRandom::uniform(std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    auto v = next_u64();
    if (v < limit) return v % bound;
  }
}

void FixedRandom::fill(std::span<std::uint8_t> out) {
  if (out.size() > remaining()) fail(ErrorCode::Exhausted, "fixed random source drained");
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(pos_), out.size(), out.begin());
  pos_ += out.size();
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
}

}  // namespace letterseal
