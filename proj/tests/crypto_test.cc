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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "enslab/crypto.h"

using namespace enslab;
using namespace enslab::crypto;

namespace {

template <size_t N>
std::array<uint8_t, N> ArrayFromHex(const std::string& hex) {
  Bytes b = FromHex(hex);
  REQUIRE(b.size() == N);
  std::array<uint8_t, N> out{};
  std::copy(b.begin(), b.end(), out.begin());
  return out;
}

template <size_t N>
std::array<uint8_t, N> Counting() {
  std::array<uint8_t, N> out{};
  for (size_t i = 0; i < N; ++i) out[i] = static_cast<uint8_t>(i);
  return out;
}

}  // namespace

TEST_CASE("prp64 round-trip and injectivity over samples") {
  Rng rng(7);
  Prp64Key key = rng.NextArray<24>();
  std::set<Block64> images;
  for (int i = 0; i < 64; ++i) {
    Block64 block = rng.NextArray<8>();
    Block64 ct = Prp64Encrypt(key, block);
    CHECK(Prp64Decrypt(key, ct) == block);
    images.insert(ct);
  }
  CHECK(images.size() == 64);  // no collisions among distinct inputs
}

TEST_CASE("prp64 pinned vector (DES-EDE3-ECB)") {
  // Independently computed with another implementation.
  Prp64Key key = Counting<24>();
  Block64 block = Counting<8>();
  CHECK(ToHex(View(Prp64Encrypt(key, block))) == "58ed248f77f6b19e");
}

TEST_CASE("epoch/id packing: 24-bit index next to 40-bit identifier") {
  Block64 packed = PackEpochId(0x000001, 0x0000000002ULL);
  CHECK(ToHex(View(packed)) == "0000010000000002");
  uint32_t epoch = 0;
  uint64_t id = 0;
  UnpackEpochId(packed, &epoch, &id);
  CHECK(epoch == 1);
  CHECK(id == 2);

  Block64 wide = PackEpochId(0xfffffe, 0xfffffffff1ULL);
  UnpackEpochId(wide, &epoch, &id);
  CHECK(epoch == 0xfffffe);
  CHECK(id == 0xfffffffff1ULL);
}

TEST_CASE("block128 round-trip and pinned AES vector") {
  Key128 key = Counting<16>();
  Block128 zero{};
  Block128 ct = Block128Encrypt(key, zero);
  CHECK(ToHex(View(ct)) == "c6a13b37878f5b826f4f8162a1c8d879");
  CHECK(Block128Decrypt(key, ct) == zero);

  Rng rng(3);
  std::set<Block128> images;
  for (int i = 0; i < 32; ++i) {
    images.insert(Block128Encrypt(key, rng.NextArray<16>()));
  }
  CHECK(images.size() == 32);
}

TEST_CASE("hkdf matches RFC 5869 test case 1") {
  Bytes ikm(22, 0x0b);
  Bytes salt = FromHex("000102030405060708090a0b0c");
  Bytes info = FromHex("f0f1f2f3f4f5f6f7f8f9");
  Bytes okm = Hkdf(ikm, salt, info, 42);
  CHECK(ToHex(okm) ==
        "3cb25f25faacd57a90434f64d0362f2a2d2d0a90cf1a5a4c5db02d56ecc4c5bf"
        "34007208d5b887185865");
}

TEST_CASE("kdf label separation and pinned vectors") {
  Key128 zero{};
  Key128 rpik = Kdf(View(zero), "ENRPIK");
  Key128 aemk = Kdf(View(zero), "ENAEMK");
  CHECK(ToHex(View(rpik)) == "59ea58dd0914c8b7a1b0ade4528b7912");
  CHECK(ToHex(View(aemk)) == "6700962f3c90306de045f0c92b20b6c2");
  CHECK(rpik != aemk);
  CHECK(Kdf(View(zero), "ENRPIK") == rpik);  // repeatability

  // No collisions across the label set used in the codebase.
  std::set<Key128> keys;
  for (const char* label : {"ENRPIK", "ENAEMK", "enc", "auth"}) {
    keys.insert(Kdf(View(zero), label));
  }
  CHECK(keys.size() == 4);
}

TEST_CASE("mac40 is five bytes and rejects tampering") {
  MacKey key{};
  key.fill(0x0b);
  Bytes msg = ToBytes("hello robert");
  Tag40 tag = Mac40(key, msg);
  CHECK(tag.size() == 5);
  CHECK(ToHex(View(tag)) == "8648b895a5");
  CHECK(Verify40(key, msg, tag));

  Tag40 flipped = tag;
  flipped[0] ^= 0x01;
  CHECK(!Verify40(key, msg, flipped));
  Bytes other = ToBytes("hello r0bert");
  CHECK(!Verify40(key, other, tag));
}

TEST_CASE("x25519 shared secret symmetry and RFC 7748 vector") {
  auto sk_a = ArrayFromHex<32>(
      "77076d0a7318a57d3c16c17251b26645df4c2f87ebc0992ab177fba51db92c2a");
  auto sk_b = ArrayFromHex<32>(
      "5dab087e624a8a4b79e17f8b83800ee66f3bb1292618b6fd1c2f8b27ff88e0eb");
  auto pk_a = ArrayFromHex<32>(
      "8520f0098930a754748b7ddcb43ef75a0dbf3a0d26381af4eba4a98eaa9b4e6a");
  auto pk_b = ArrayFromHex<32>(
      "de9edb7d7b7dc1b4d35b61c2ece435373f8343c85b78674dadfc7e146f882b4f");
  auto shared_ab = DhShared(sk_a, pk_b);
  auto shared_ba = DhShared(sk_b, pk_a);
  CHECK(shared_ab == shared_ba);
  CHECK(ToHex(View(shared_ab)) ==
        "4a5d9d5ba4ce2de1728e3bf480350f25e07e21c947d19e3376f09b3c1e161742");
}

TEST_CASE("dh pairs generated from the seeded rng agree and differ") {
  Rng rng(99);
  auto a = DhGenerate(rng);
  auto b = DhGenerate(rng);
  auto c = DhGenerate(rng);
  CHECK(DhShared(a.secret, b.public_key) == DhShared(b.secret, a.public_key));
  CHECK(DhShared(a.secret, b.public_key) != DhShared(a.secret, c.public_key));
}

TEST_CASE("channel key derivation splits into independent subkeys") {
  std::array<uint8_t, 32> shared{};
  Key256 enc;
  MacKey auth;
  DeriveChannelKeys(shared, &enc, &auth);
  CHECK(ToHex(View(enc)) ==
        "b98c0e7f441a0eb781dc6e5e83b5176663335b5d56140da14306f0c2b03508ad");
  CHECK(ToHex(View(auth)) ==
        "31df6cff2f7200af61bee50e3b01fad553d8e430c2b0c376e498598956d7e809");
}

TEST_CASE("ed25519 sign/verify and RFC 8032 test 1") {
  SigKeyPair keys;
  keys.secret = ArrayFromHex<32>(
      "9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60");
  keys.public_key = ArrayFromHex<32>(
      "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a");
  Bytes sig = Sign(keys, {});
  CHECK(ToHex(sig) ==
        "e5564300c360ac729086e2cc806e828a84877f1eb8e5d974d873e06522490155"
        "5fb8821590a33bacc61e39701cf9b46bd25bf5f0595bbe24655141438e7a100b");
  CHECK(Verify(keys.public_key, {}, sig));

  Rng rng(1);
  SigKeyPair fresh = SigGenerate(rng);
  Bytes msg = ToBytes("released keys");
  Bytes s = Sign(fresh, msg);
  CHECK(Verify(fresh.public_key, msg, s));
  Bytes tampered = ToBytes("released keyz");
  CHECK(!Verify(fresh.public_key, tampered, s));
  CHECK(!Verify(keys.public_key, msg, s));
}

TEST_CASE("sha256 determinism and known digests") {
  CHECK(ToHex(View(Sha256({}))) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  Bytes abc = ToBytes("abc");
  CHECK(ToHex(View(Sha256(abc))) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(Sha256(abc) == Sha256(abc));
  CHECK(DigestHex(abc) == "ba7816bf8f01cfea");
}

TEST_CASE("hex round-trip") {
  Bytes data = {0x00, 0x7f, 0xff, 0x10};
  CHECK(FromHex(ToHex(data)) == data);
}
