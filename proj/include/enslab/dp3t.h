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

#ifndef ENSLAB_DP3T_H_
#define ENSLAB_DP3T_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "enslab/gaen.h"

// DP3T day keys, variant-3 device-bound upload authorisation, key
// publication and home-back-end federation.
namespace enslab::dp3t {

// Phone-side record of a blinded key commitment: h = H(tek || t || r) with
// t the key's starting epoch and r a 128-bit blinding nonce.
struct TestDbEntry {
  gaen::Tek tek;
  int64_t start_epoch = 0;
  Bytes blind;  // 16 bytes
};

crypto::Digest256 CommitmentHash(const gaen::Tek& tek, int64_t start_epoch,
                                 ByteView blind);

// Health-authority signature over (h, issue_day).
struct AuthCode {
  crypto::Digest256 h{};
  int64_t issue_day = 0;
  Bytes signature;
};

Bytes AuthCodeMessage(const crypto::Digest256& h, int64_t issue_day);

struct UploadTuple {
  Bytes tek;  // 16 bytes
  int64_t start_epoch = 0;
  Bytes blind;
  AuthCode ac;
};

enum class Dp3tError {
  kTooManyKeys,
  kNoAuthorisation,
  kBadSignature,
  kStaleCode,
  kCommitmentMismatch,
};

class Dp3tHealthAuthority {
 public:
  Dp3tHealthAuthority(World* world, std::string country);

  const std::string& country() const { return country_; }
  const std::array<uint8_t, 32>& public_key() const {
    return sig_keys_.public_key;
  }
  const crypto::SigKeyPair& sig_keys() const { return sig_keys_; }

  // Pre-test commitment intake, at most dp3t.max_committed_keys hashes.
  Result<Unit, Dp3tError> ReceiveCommitments(
      const std::string& phone_name, const std::vector<crypto::Digest256>& hs);

  // On a positive test: logs the diagnosis and returns one AC per pending
  // commitment. A negative result authorises nothing.
  Result<std::vector<AuthCode>, Dp3tError> DiagnoseAndSign(
      const std::string& phone_name, int64_t window_start_day,
      int64_t window_end_day, bool positive = true);

 private:
  World* world_;
  std::string country_;
  crypto::SigKeyPair sig_keys_{};
  std::map<std::string, std::vector<crypto::Digest256>> pending_;
};

class Dp3tBackend {
 public:
  Dp3tBackend(World* world, std::string country,
              const std::array<uint8_t, 32>& ha_public_key);

  const std::string& country() const { return country_; }
  const std::array<uint8_t, 32>& operator_public_key() const {
    return sig_keys_.public_key;
  }
  const crypto::SigKeyPair& sig_keys() const { return sig_keys_; }

  void ConnectPeer(Dp3tBackend* peer);
  void DeclareVisited(const std::string& phone_name,
                      const std::set<std::string>& regions);

  // Verifies the commitment, the HA signature and the code's recency,
  // then releases the key.
  Result<Unit, Dp3tError> ProcessUpload(const UploadTuple& upload);

  // Keys this back end currently serves (release timing applied).
  std::vector<gaen::ReleasedKey> OwnReleasedKeys() const;
  // Keys served to one phone: home region plus declared visited regions.
  std::vector<gaen::ReleasedKey> FetchForPhone(
      const std::string& phone_name) const;

 private:
  struct Row {
    Bytes tek;
    int64_t day = 0;
    int64_t release_after_s = 0;
  };

  World* world_;
  std::string country_;
  std::array<uint8_t, 32> ha_public_key_{};
  crypto::SigKeyPair sig_keys_{};
  std::vector<Row> rows_;
  std::map<std::string, Dp3tBackend*> peers_;
  std::map<std::string, std::set<std::string>> visited_;
};

class Dp3tPhone : public gaen::GaenPhone {
 public:
  Dp3tPhone(World* world, std::string name, std::string country)
      : gaen::GaenPhone(world, std::move(name), std::move(country)),
        world_(world) {}

  const std::vector<TestDbEntry>& test_db() const { return test_db_; }
  std::vector<TestDbEntry>* mutable_test_db() { return &test_db_; }

  // Blinds and commits the named day keys to the HA before testing.
  Result<std::vector<crypto::Digest256>, Dp3tError> CommitKeys(
      Dp3tHealthAuthority* ha, const std::vector<int64_t>& days);

  // Commits whatever the test database currently holds; the path a
  // compromised phone takes after its entries were tampered with.
  Result<std::vector<crypto::Digest256>, Dp3tError> CommitStoredDb(
      Dp3tHealthAuthority* ha);

  void StoreAuthCodes(std::vector<AuthCode> acs) { acs_ = std::move(acs); }

  // Uploads every committed key as an independent single-key upload, then
  // deletes all key material.
  std::vector<Result<Unit, Dp3tError>> UploadKeys(Dp3tBackend* backend);

 private:
  World* world_;
  std::vector<TestDbEntry> test_db_;
  std::vector<AuthCode> acs_;
};

}  // namespace enslab::dp3t

#endif  // ENSLAB_DP3T_H_
