// Copyright 2026 The ens-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "enslab/crypto.h"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <memory>

namespace enslab::crypto {

namespace {

[[noreturn]] void Die(const char* what) {
  std::cerr << "openssl failure: " << what << "\n";
  std::abort();
}

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};
struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct PkeyCtxDeleter {
  void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;
using Pkey = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using PkeyCtx = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter>;
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

// One-block ECB transform with padding disabled.
void BlockCipher(const EVP_CIPHER* cipher, const uint8_t* key, bool encrypt,
                 const uint8_t* in, uint8_t* out, int block_len) {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) Die("ctx");
  if (EVP_CipherInit_ex(ctx.get(), cipher, nullptr, key, nullptr,
                        encrypt ? 1 : 0) != 1) {
    Die("CipherInit");
  }
  EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
  int len = 0;
  if (EVP_CipherUpdate(ctx.get(), out, &len, in, block_len) != 1 ||
      len != block_len) {
    Die("CipherUpdate");
  }
  int fin = 0;
  if (EVP_CipherFinal_ex(ctx.get(), out + len, &fin) != 1 || fin != 0) {
    Die("CipherFinal");
  }
}

Bytes HmacSha256(ByteView key, ByteView message) {
  Bytes out(32);
  unsigned int len = 32;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
           message.data(), message.size(), out.data(), &len) == nullptr ||
      len != 32) {
    Die("HMAC");
  }
  return out;
}

std::array<uint8_t, 32> RawPublicOf(int pkey_type,
                                    const std::array<uint8_t, 32>& secret) {
  Pkey pkey(EVP_PKEY_new_raw_private_key(pkey_type, nullptr, secret.data(),
                                         secret.size()));
  if (!pkey) Die("raw private key");
  std::array<uint8_t, 32> pub{};
  size_t len = pub.size();
  if (EVP_PKEY_get_raw_public_key(pkey.get(), pub.data(), &len) != 1 ||
      len != pub.size()) {
    Die("raw public key");
  }
  return pub;
}

}  // namespace

Block64 Prp64Encrypt(const Prp64Key& key, const Block64& block) {
  Block64 out;
  BlockCipher(EVP_des_ede3_ecb(), key.data(), true, block.data(), out.data(),
              8);
  return out;
}

Block64 Prp64Decrypt(const Prp64Key& key, const Block64& block) {
  Block64 out;
  BlockCipher(EVP_des_ede3_ecb(), key.data(), false, block.data(), out.data(),
              8);
  return out;
}

Block64 PackEpochId(uint32_t epoch24, uint64_t id40) {
  Block64 out{};
  out[0] = static_cast<uint8_t>(epoch24 >> 16);
  out[1] = static_cast<uint8_t>(epoch24 >> 8);
  out[2] = static_cast<uint8_t>(epoch24);
  out[3] = static_cast<uint8_t>(id40 >> 32);
  out[4] = static_cast<uint8_t>(id40 >> 24);
  out[5] = static_cast<uint8_t>(id40 >> 16);
  out[6] = static_cast<uint8_t>(id40 >> 8);
  out[7] = static_cast<uint8_t>(id40);
  return out;
}

void UnpackEpochId(const Block64& block, uint32_t* epoch24, uint64_t* id40) {
  *epoch24 = (static_cast<uint32_t>(block[0]) << 16) |
             (static_cast<uint32_t>(block[1]) << 8) |
             static_cast<uint32_t>(block[2]);
  *id40 = (static_cast<uint64_t>(block[3]) << 32) |
          (static_cast<uint64_t>(block[4]) << 24) |
          (static_cast<uint64_t>(block[5]) << 16) |
          (static_cast<uint64_t>(block[6]) << 8) |
          static_cast<uint64_t>(block[7]);
}

Block128 Block128Encrypt(const Key128& key, const Block128& block) {
  Block128 out;
  BlockCipher(EVP_aes_128_ecb(), key.data(), true, block.data(), out.data(),
              16);
  return out;
}

Block128 Block128Decrypt(const Key128& key, const Block128& block) {
  Block128 out;
  BlockCipher(EVP_aes_128_ecb(), key.data(), false, block.data(), out.data(),
              16);
  return out;
}

Bytes Hkdf(ByteView ikm, ByteView salt, ByteView info, size_t length) {
  // RFC 5869 over HMAC-SHA256. An absent salt is a string of hash-length
  // zero bytes.
  Bytes zero_salt(32, 0);
  ByteView effective_salt = salt.empty() ? ByteView(zero_salt) : salt;
  Bytes prk = HmacSha256(effective_salt, ikm);

  Bytes okm;
  Bytes t;
  uint8_t counter = 1;
  while (okm.size() < length) {
    Bytes input = t;
    input.insert(input.end(), info.begin(), info.end());
    input.push_back(counter++);
    t = HmacSha256(prk, input);
    okm.insert(okm.end(), t.begin(), t.end());
  }
  okm.resize(length);
  return okm;
}

Key128 Kdf(ByteView key, const std::string& label) {
  Bytes okm = Hkdf(key, {}, ToBytes(label), 16);
  Key128 out;
  std::memcpy(out.data(), okm.data(), 16);
  return out;
}

Key256 Kdf256(ByteView key, const std::string& label) {
  Bytes okm = Hkdf(key, {}, ToBytes(label), 32);
  Key256 out;
  std::memcpy(out.data(), okm.data(), 32);
  return out;
}

Tag40 Mac40(const MacKey& key, ByteView message) {
  Bytes full = HmacSha256(View(key), message);
  Tag40 tag;
  std::memcpy(tag.data(), full.data(), tag.size());
  return tag;
}

bool Verify40(const MacKey& key, ByteView message, const Tag40& tag) {
  return Mac40(key, message) == tag;
}

Digest256 Sha256(ByteView message) {
  Digest256 out{};
  unsigned int len = 0;
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), message.data(), message.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != 32) {
    Die("sha256");
  }
  return out;
}

std::string DigestHex(ByteView message) {
  Digest256 d = Sha256(message);
  return ToHex(ByteView(d.data(), 8));
}

DhKeyPair DhGenerate(Rng& rng) {
  DhKeyPair pair;
  pair.secret = rng.NextArray<32>();
  pair.public_key = RawPublicOf(EVP_PKEY_X25519, pair.secret);
  return pair;
}

std::array<uint8_t, 32> DhShared(const std::array<uint8_t, 32>& secret,
                                 const std::array<uint8_t, 32>& peer_public) {
  Pkey sk(EVP_PKEY_new_raw_private_key(EVP_PKEY_X25519, nullptr, secret.data(),
                                       secret.size()));
  Pkey pk(EVP_PKEY_new_raw_public_key(EVP_PKEY_X25519, nullptr,
                                      peer_public.data(), peer_public.size()));
  if (!sk || !pk) Die("x25519 keys");
  PkeyCtx ctx(EVP_PKEY_CTX_new(sk.get(), nullptr));
  std::array<uint8_t, 32> shared{};
  size_t len = shared.size();
  if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 ||
      EVP_PKEY_derive_set_peer(ctx.get(), pk.get()) != 1 ||
      EVP_PKEY_derive(ctx.get(), shared.data(), &len) != 1 ||
      len != shared.size()) {
    Die("x25519 derive");
  }
  return shared;
}

void DeriveChannelKeys(const std::array<uint8_t, 32>& shared, Key256* enc,
                       MacKey* auth) {
  *enc = Kdf256(ByteView(shared.data(), shared.size()), "enc");
  Key256 a = Kdf256(ByteView(shared.data(), shared.size()), "auth");
  std::memcpy(auth->data(), a.data(), auth->size());
}

SigKeyPair SigGenerate(Rng& rng) {
  SigKeyPair pair;
  pair.secret = rng.NextArray<32>();
  pair.public_key = RawPublicOf(EVP_PKEY_ED25519, pair.secret);
  return pair;
}

Bytes Sign(const SigKeyPair& keys, ByteView message) {
  Pkey sk(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr,
                                       keys.secret.data(),
                                       keys.secret.size()));
  if (!sk) Die("ed25519 key");
  MdCtx ctx(EVP_MD_CTX_new());
  Bytes sig(64);
  size_t len = sig.size();
  if (!ctx ||
      EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, sk.get()) !=
          1 ||
      EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(),
                     message.size()) != 1 ||
      len != sig.size()) {
    Die("ed25519 sign");
  }
  return sig;
}

bool Verify(const std::array<uint8_t, 32>& public_key, ByteView message,
            ByteView signature) {
  if (signature.size() != 64) return false;
  Pkey pk(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr,
                                      public_key.data(), public_key.size()));
  if (!pk) return false;
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr,
                                   pk.get()) != 1) {
    return false;
  }
  return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(),
                          message.data(), message.size()) == 1;
}

}  // namespace enslab::crypto
