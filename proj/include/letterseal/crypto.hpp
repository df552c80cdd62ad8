#pragma once

#include <cstdint>

#include "letterseal/bytes.hpp"
#include "letterseal/random.hpp"

namespace letterseal {

struct ScalarTag {};
struct ElementTag {};
struct SharedTag {};
struct KeyTag {};
struct DigestTag {};

using GroupScalar = FixedBytes<ScalarTag, 32>;
using GroupElement = FixedBytes<ElementTag, 32>;
using SharedSecret = FixedBytes<SharedTag, 32>;
using SymmetricKey = FixedBytes<KeyTag, 32>;
using Digest = FixedBytes<DigestTag, 32>;

// 96-bit GCM nonce. Only built from an 8-byte index||rand material.
class AeadNonce {
 public:
  static AeadNonce from_material(const ByteArray<8>& material);
  ByteView view() const { return bytes_; }
  friend bool operator==(const AeadNonce&, const AeadNonce&) = default;

 private:
  AeadNonce() = default;
  ByteArray<12> bytes_{};
};

struct KeyPair {
  GroupScalar secret;
  GroupElement pub;
  friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

KeyPair dh_keygen(RandomSource& rng);
GroupElement dh_to_public(const GroupScalar& secret);
// Throws LowOrderPoint when the shared output is all zero.
SharedSecret dh(const GroupScalar& secret, const GroupElement& peer);

Digest hash(ByteView data);
Digest hmac_sha256(ByteView key, ByteView data);
Bytes hkdf_sha256(ByteView salt, ByteView ikm, ByteView info, std::size_t length);

inline constexpr std::string_view kRootLabel = "LINEvDR-root";

struct RootStep {
  SymmetricKey root;
  SymmetricKey chain;
};
// HKDF-SHA256(salt, ikm, "LINEvDR-root", 64), split 32/32.
RootStep kdf_root(ByteView ikm, ByteView salt);

struct ChainStep {
  SymmetricKey message_key;
  SymmetricKey next_chain;
};
ChainStep kdf_chain(const SymmetricKey& ck);

// AES-256-GCM; output is ciphertext || 16-byte tag.
Bytes aead_seal(const SymmetricKey& key, const AeadNonce& nonce, ByteView plaintext, ByteView ad);
Bytes aead_open(const SymmetricKey& key, const AeadNonce& nonce, ByteView sealed, ByteView ad);

Bytes cbc_encrypt(const SymmetricKey& key, const ByteArray<16>& iv, ByteView plaintext);
Bytes cbc_decrypt(const SymmetricKey& key, const ByteArray<16>& iv, ByteView ciphertext);

ByteArray<16> ecb_encrypt_block(const SymmetricKey& key, ByteView block);

namespace detail {
// Raw-IV GCM for reference vectors whose IV is not an index||rand layout.
Bytes aead_seal_iv(const SymmetricKey& key, ByteView iv12, ByteView plaintext, ByteView ad);
}  // namespace detail

// Per-thread operation counters used by the benchmark instrumentation.
struct OpCounters {
  std::uint64_t dh_keygen = 0;
  std::uint64_t dh_agree = 0;
  std::uint64_t kdf = 0;
  std::uint64_t aead = 0;

  std::uint64_t dh_total() const { return dh_keygen + dh_agree; }
  friend OpCounters operator-(const OpCounters& a, const OpCounters& b) {
    return {a.dh_keygen - b.dh_keygen, a.dh_agree - b.dh_agree, a.kdf - b.kdf, a.aead - b.aead};
  }
};

OpCounters& op_counters();
inline void count_kdf() { ++op_counters().kdf; }

}  // namespace letterseal
