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

#ifndef ENSLAB_CRYPTO_H_
#define ENSLAB_CRYPTO_H_

#include <array>
#include <cstdint>
#include <string>

#include "enslab/bytes.h"
#include "enslab/rng.h"

// Concrete cryptographic primitives with the exact shapes the protocols
// need. Backed by OpenSSL: the 64-bit/192-bit PRP is DES-EDE3, the 128-bit
// PRP is AES-128, MACs are HMAC-SHA256 truncated to 40 bits, the KDF is
// HKDF-SHA256, DH is X25519 and signatures are Ed25519. All functions are
// deterministic; randomness only ever enters through the caller's Rng.
namespace enslab::crypto {

using Block64 = std::array<uint8_t, 8>;
using Block128 = std::array<uint8_t, 16>;
using Prp64Key = std::array<uint8_t, 24>;  // 192-bit key
using Key128 = std::array<uint8_t, 16>;
using Key256 = std::array<uint8_t, 32>;
using MacKey = std::array<uint8_t, 32>;
using Tag40 = std::array<uint8_t, 5>;
using Digest256 = std::array<uint8_t, 32>;

struct SigKeyPair {
  std::array<uint8_t, 32> secret;
  std::array<uint8_t, 32> public_key;
};

struct DhKeyPair {
  std::array<uint8_t, 32> secret;
  std::array<uint8_t, 32> public_key;
};

// 64-bit-block PRP under a 192-bit key.
Block64 Prp64Encrypt(const Prp64Key& key, const Block64& block);
Block64 Prp64Decrypt(const Prp64Key& key, const Block64& block);

// 24-bit epoch index next to a 40-bit identifier in one 64-bit block.
Block64 PackEpochId(uint32_t epoch24, uint64_t id40);
void UnpackEpochId(const Block64& block, uint32_t* epoch24, uint64_t* id40);

// 128-bit-block PRP.
Block128 Block128Encrypt(const Key128& key, const Block128& block);
Block128 Block128Decrypt(const Key128& key, const Block128& block);

// HKDF-SHA256 with empty salt; the label is the info field.
Key128 Kdf(ByteView key, const std::string& label);
Key256 Kdf256(ByteView key, const std::string& label);
// Full RFC 5869 interface, used for pinned-vector tests.
Bytes Hkdf(ByteView ikm, ByteView salt, ByteView info, size_t length);

Tag40 Mac40(const MacKey& key, ByteView message);
bool Verify40(const MacKey& key, ByteView message, const Tag40& tag);

Digest256 Sha256(ByteView message);
// 64-bit digest prefix in hex; the identifier used for byte-strings in
// exported traces.
std::string DigestHex(ByteView message);

DhKeyPair DhGenerate(Rng& rng);
std::array<uint8_t, 32> DhShared(const std::array<uint8_t, 32>& secret,
                                 const std::array<uint8_t, 32>& peer_public);
// Splits a DH shared secret into an encryption key and a MAC key.
void DeriveChannelKeys(const std::array<uint8_t, 32>& shared, Key256* enc,
                       MacKey* auth);

SigKeyPair SigGenerate(Rng& rng);
Bytes Sign(const SigKeyPair& keys, ByteView message);
bool Verify(const std::array<uint8_t, 32>& public_key, ByteView message,
            ByteView signature);

inline ByteView View(const Bytes& b) { return ByteView(b); }
template <size_t N>
ByteView View(const std::array<uint8_t, N>& a) {
  return ByteView(a.data(), a.size());
}
template <size_t N>
Bytes ToVec(const std::array<uint8_t, N>& a) {
  return Bytes(a.begin(), a.end());
}

}  // namespace enslab::crypto

#endif  // ENSLAB_CRYPTO_H_
