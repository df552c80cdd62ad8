#include "letterseal/crypto.hpp"

#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/kdf.h>

#include <memory>

#include "letterseal/error.hpp"

namespace letterseal {

namespace {

struct PkeyFree {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct PkeyCtxFree {
  void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};
struct CipherCtxFree {
  void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};
struct KdfFree {
  void operator()(EVP_KDF* p) const { EVP_KDF_free(p); }
};
struct KdfCtxFree {
  void operator()(EVP_KDF_CTX* p) const { EVP_KDF_CTX_free(p); }
};

using Pkey = std::unique_ptr<EVP_PKEY, PkeyFree>;
using PkeyCtx = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxFree>;
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxFree>;

[[noreturn]] void openssl_fail(const char* what) { throw std::runtime_error(std::string("openssl: ") + what); }

Pkey private_key(const GroupScalar& s) {
  Pkey k(EVP_PKEY_new_raw_private_key(EVP_PKEY_X25519, nullptr, s.data(), 32));
  if (!k) openssl_fail("x25519 private key");
  return k;
}

void clamp(GroupScalar& s) {
  s.bytes[0] &= 248;
  s.bytes[31] &= 127;
  s.bytes[31] |= 64;
}

CipherCtx new_cipher() {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) openssl_fail("cipher ctx");
  return ctx;
}

Bytes gcm_seal(const SymmetricKey& key, ByteView iv, ByteView pt, ByteView ad) {
  auto ctx = new_cipher();
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(iv.size()), nullptr) != 1 ||
      EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), iv.data()) != 1) {
    openssl_fail("gcm init");
  }
  int len = 0;
  if (!ad.empty() && EVP_EncryptUpdate(ctx.get(), nullptr, &len, ad.data(), static_cast<int>(ad.size())) != 1) {
    openssl_fail("gcm aad");
  }
  Bytes out(pt.size() + 16);
  int written = 0;
  if (!pt.empty()) {
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &len, pt.data(), static_cast<int>(pt.size())) != 1) {
      openssl_fail("gcm update");
    }
    written = len;
  }
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + written, &len) != 1) openssl_fail("gcm final");
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, 16, out.data() + pt.size()) != 1) {
    openssl_fail("gcm tag");
  }
  ++op_counters().aead;
  return out;
}

}  // namespace

OpCounters& op_counters() {
  thread_local OpCounters counters;
  return counters;
}

AeadNonce AeadNonce::from_material(const ByteArray<8>& material) {
  AeadNonce n;
  std::copy(material.begin(), material.end(), n.bytes_.begin());
  return n;
}

KeyPair dh_keygen(RandomSource& rng) {
  GroupScalar s(rng.draw<32>());
  clamp(s);
  ++op_counters().dh_keygen;
  return {s, dh_to_public(s)};
}

GroupElement dh_to_public(const GroupScalar& secret) {
  auto k = private_key(secret);
  GroupElement pub;
  std::size_t len = 32;
  if (EVP_PKEY_get_raw_public_key(k.get(), pub.bytes.data(), &len) != 1 || len != 32) {
    openssl_fail("x25519 public key");
  }
  return pub;
}

SharedSecret dh(const GroupScalar& secret, const GroupElement& peer) {
  auto priv = private_key(secret);
  Pkey pub(EVP_PKEY_new_raw_public_key(EVP_PKEY_X25519, nullptr, peer.data(), 32));
  if (!pub) openssl_fail("x25519 peer key");
  PkeyCtx ctx(EVP_PKEY_CTX_new(priv.get(), nullptr));
  if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 || EVP_PKEY_derive_set_peer(ctx.get(), pub.get()) != 1) {
    openssl_fail("x25519 derive init");
  }
  SharedSecret out;
  std::size_t len = 32;
  const bool ok = EVP_PKEY_derive(ctx.get(), out.bytes.data(), &len) == 1 && len == 32;
  ++op_counters().dh_agree;
  std::uint8_t acc = 0;
  for (auto b : out.bytes) acc |= b;
  if (!ok || acc == 0) fail(ErrorCode::LowOrderPoint, "x25519 output is all zero");
  return out;
}

Digest hash(ByteView data) {
  Digest d;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_sha256(), nullptr) != 1) {
    openssl_fail("sha256");
  }
  return d;
}

Digest hmac_sha256(ByteView key, ByteView data) {
  Digest d;
  unsigned int len = 0;
  if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), d.bytes.data(),
            &len)) {
    openssl_fail("hmac");
  }
  return d;
}

Bytes hkdf_sha256(ByteView salt, ByteView ikm, ByteView info, std::size_t length) {
  static const std::unique_ptr<EVP_KDF, KdfFree> kdf(EVP_KDF_fetch(nullptr, "HKDF", nullptr));
  if (!kdf) openssl_fail("hkdf fetch");
  std::unique_ptr<EVP_KDF_CTX, KdfCtxFree> ctx(EVP_KDF_CTX_new(kdf.get()));
  if (!ctx) openssl_fail("hkdf ctx");
  char digest[] = "SHA256";
  OSSL_PARAM params[5];
  int n = 0;
  params[n++] = OSSL_PARAM_construct_utf8_string(OSSL_KDF_PARAM_DIGEST, digest, 0);
  params[n++] = OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_KEY, const_cast<std::uint8_t*>(ikm.data()),
                                                  ikm.size());
  if (!salt.empty()) {
    params[n++] = OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_SALT, const_cast<std::uint8_t*>(salt.data()),
                                                    salt.size());
  }
  params[n++] = OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_INFO, const_cast<std::uint8_t*>(info.data()),
                                                  info.size());
  params[n] = OSSL_PARAM_construct_end();
  Bytes out(length);
  if (EVP_KDF_derive(ctx.get(), out.data(), out.size(), params) != 1) openssl_fail("hkdf derive");
  return out;
}

RootStep kdf_root(ByteView ikm, ByteView salt) {
  if (ikm.empty()) fail(ErrorCode::InvalidLength, "kdf_root needs non-empty ikm");
  auto okm = hkdf_sha256(salt, ikm, as_bytes(kRootLabel), 64);
  RootStep step{SymmetricKey::from(ByteView(okm).first(32)), SymmetricKey::from(ByteView(okm).last(32))};
  wipe(okm);
  count_kdf();
  return step;
}

ChainStep kdf_chain(const SymmetricKey& ck) {
  static constexpr std::uint8_t kMessage[] = {0x01};
  static constexpr std::uint8_t kChain[] = {0x02};
  ChainStep step{SymmetricKey(hmac_sha256(ck.view(), kMessage).bytes),
                 SymmetricKey(hmac_sha256(ck.view(), kChain).bytes)};
  count_kdf();
  return step;
}

Bytes aead_seal(const SymmetricKey& key, const AeadNonce& nonce, ByteView plaintext, ByteView ad) {
  return gcm_seal(key, nonce.view(), plaintext, ad);
}

Bytes aead_open(const SymmetricKey& key, const AeadNonce& nonce, ByteView sealed, ByteView ad) {
  if (sealed.size() < 16) fail(ErrorCode::AuthFailure, "sealed input shorter than tag");
  const auto body = sealed.first(sealed.size() - 16);
  ByteArray<16> tag;
  std::copy(sealed.end() - 16, sealed.end(), tag.begin());
  auto ctx = new_cipher();
  const auto iv = nonce.view();
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(iv.size()), nullptr) != 1 ||
      EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), iv.data()) != 1) {
    openssl_fail("gcm init");
  }
  int len = 0;
  if (!ad.empty() && EVP_DecryptUpdate(ctx.get(), nullptr, &len, ad.data(), static_cast<int>(ad.size())) != 1) {
    openssl_fail("gcm aad");
  }
  Bytes out(body.size());
  int written = 0;
  if (!body.empty()) {
    if (EVP_DecryptUpdate(ctx.get(), out.data(), &len, body.data(), static_cast<int>(body.size())) != 1) {
      openssl_fail("gcm update");
    }
    written = len;
  }
  EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, 16, tag.data());
  ++op_counters().aead;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + written, &len) != 1) {
    wipe(out);
    fail(ErrorCode::AuthFailure, "gcm tag mismatch");
  }
  return out;
}

Bytes cbc_encrypt(const SymmetricKey& key, const ByteArray<16>& iv, ByteView plaintext) {
  auto ctx = new_cipher();
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr, key.data(), iv.data()) != 1) {
    openssl_fail("cbc init");
  }
  Bytes out(plaintext.size() + 16);
  int len = 0, total = 0;
  if (!plaintext.empty()) {
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(), static_cast<int>(plaintext.size())) != 1) {
      openssl_fail("cbc update");
    }
    total = len;
  }
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + total, &len) != 1) openssl_fail("cbc final");
  out.resize(static_cast<std::size_t>(total + len));
  return out;
}

Bytes cbc_decrypt(const SymmetricKey& key, const ByteArray<16>& iv, ByteView ciphertext) {
  if (ciphertext.empty() || ciphertext.size() % 16 != 0) {
    fail(ErrorCode::PaddingError, "ciphertext is not a positive multiple of the block size");
  }
  auto ctx = new_cipher();
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr, key.data(), iv.data()) != 1) {
    openssl_fail("cbc init");
  }
  Bytes out(ciphertext.size() + 16);
  int len = 0;
  if (EVP_DecryptUpdate(ctx.get(), out.data(), &len, ciphertext.data(), static_cast<int>(ciphertext.size())) != 1) {
    openssl_fail("cbc update");
  }
  int total = len;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + total, &len) != 1) {
    wipe(out);
    fail(ErrorCode::PaddingError, "bad PKCS#7 padding");
  }
  out.resize(static_cast<std::size_t>(total + len));
  return out;
}

ByteArray<16> ecb_encrypt_block(const SymmetricKey& key, ByteView block) {
  if (block.size() != 16) fail(ErrorCode::InvalidLength, "ecb block must be 16 bytes");
  auto ctx = new_cipher();
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_ecb(), nullptr, key.data(), nullptr) != 1) {
    openssl_fail("ecb init");
  }
  EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
  ByteArray<16> out;
  int len = 0;
  if (EVP_EncryptUpdate(ctx.get(), out.data(), &len, block.data(), 16) != 1 || len != 16) {
    openssl_fail("ecb update");
  }
  return out;
}

namespace detail {
Bytes aead_seal_iv(const SymmetricKey& key, ByteView iv12, ByteView plaintext, ByteView ad) {
  if (iv12.size() != 12) fail(ErrorCode::InvalidLength, "gcm iv must be 12 bytes");
  return gcm_seal(key, iv12, plaintext, ad);
}
}  // namespace detail

}  // namespace letterseal
