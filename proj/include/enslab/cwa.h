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

#ifndef ENSLAB_CWA_H_
#define ENSLAB_CWA_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "enslab/gaen.h"

// CWA upload authorisation (guid / regToken / TAN through the verification
// server) and EFGS federation. The verification server and the test result
// server are one process with two interfaces.
namespace enslab::cwa {

enum class TestResult { kPending, kNegative, kPositive };

enum class CwaError {
  kGuidAlreadyUsed,
  kUnknownToken,
  kNotPositive,
  kTanAlreadyIssued,
  kInvalidTan,
  kTanReused,
};

class VerificationServer {
 public:
  VerificationServer(World* world, std::string country)
      : world_(world), country_(std::move(country)) {}

  const std::string& country() const { return country_; }

  // Stores h(guid), mints a registration token, stores h(regToken). A
  // replayed guid is refused only when the one-TAN-per-token fix is on
  // (the deployed behaviour); with the fix off the original flaw's
  // environment is reproduced.
  Result<Bytes, CwaError> ScanAndRegister(const Bytes& guid);

  // TRS interface: the laboratory records the test outcome for h(guid).
  void SetTestResult(const Bytes& guid, TestResult result);

  Result<TestResult, CwaError> PollResult(const Bytes& reg_token);

  Result<Bytes, CwaError> RequestTan(const Bytes& reg_token);

  // Back-end side check; a valid TAN is deleted on use.
  Result<Unit, CwaError> VerifyAndConsumeTan(const Bytes& tan);

  // Storage inspection surfaces: only hashes are kept.
  const std::set<std::string>& guid_hashes() const { return guid_hashes_; }
  const std::set<std::string>& tan_hashes() const { return tan_hashes_; }
  const std::map<std::string, std::string>& reg_tokens() const {
    return reg_tokens_;
  }

 private:
  World* world_;
  std::string country_;
  std::set<std::string> guid_hashes_;
  std::map<std::string, std::string> reg_tokens_;  // h(regToken) -> h(guid)
  std::map<std::string, TestResult> results_;      // h(guid) -> result
  std::set<std::string> tan_hashes_;
  std::set<std::string> consumed_tans_;
  std::map<std::string, int64_t> tan_issue_counts_;  // h(regToken) -> count
};

struct UploadedTek {
  Bytes tek;  // 16 bytes
  int64_t day = 0;
};

class EfgsHub;

class CwaBackend {
 public:
  CwaBackend(World* world, std::string country, VerificationServer* vs)
      : world_(world), country_(std::move(country)), vs_(vs) {
    sig_keys_ = crypto::SigGenerate(world_->rng());
    local_release_delay_hours_ = world_->config().efgs_release_delay_hours;
  }

  const std::string& country() const { return country_; }
  const std::array<uint8_t, 32>& operator_public_key() const {
    return sig_keys_.public_key;
  }
  const crypto::SigKeyPair& sig_keys() const { return sig_keys_; }

  void ConnectHub(EfgsHub* hub) { hub_ = hub; }
  // Local release policy applied when no federation-wide expiry agreement
  // is in force.
  void set_local_release_delay_hours(int64_t hours) {
    local_release_delay_hours_ = hours;
  }

  // TAN-authorised upload. There is no binding between the TAN and the
  // ownership of the keys: any well-formed TEKs pass.
  Result<int64_t, CwaError> ProcessUpload(
      const std::vector<UploadedTek>& teks, const Bytes& tan,
      const std::set<std::string>& visited_countries);

  // Keys this back end serves right now, release gating applied.
  std::vector<gaen::ReleasedKey> FetchKeys() const;

 private:
  int64_t ReleaseTimeFor(int64_t key_day) const;

  World* world_;
  std::string country_;
  VerificationServer* vs_;
  EfgsHub* hub_ = nullptr;
  crypto::SigKeyPair sig_keys_{};
  int64_t local_release_delay_hours_ = 2;
  std::vector<UploadedTek> own_rows_;
};

struct EfgsRow {
  Bytes tek;
  int64_t day = 0;
  std::string origin;
  std::set<std::string> visited;
};

// Central federation database every country's back end connects to.
class EfgsHub {
 public:
  void Sync(EfgsRow row) { rows_.push_back(std::move(row)); }
  const std::vector<EfgsRow>& rows() const { return rows_; }
  // Rows relevant for one country: uploaded there or marked as visited.
  std::vector<EfgsRow> FetchFor(const std::string& country) const;

 private:
  std::vector<EfgsRow> rows_;
};

class CwaPhone : public gaen::GaenPhone {
 public:
  CwaPhone(World* world, std::string name, std::string country)
      : gaen::GaenPhone(world, std::move(name), std::move(country)),
        world_(world) {}

  void ScanGuid(const Bytes& guid) { guid_ = guid; }
  const Bytes& guid() const { return guid_; }
  const Bytes& reg_token() const { return reg_token_; }
  TestResult believed_result() const { return believed_result_; }

  Result<Unit, CwaError> RegisterWithVs(VerificationServer* vs);
  Result<TestResult, CwaError> Poll(VerificationServer* vs);
  Result<Bytes, CwaError> ObtainTan(VerificationServer* vs);

  // Uploads all currently held day keys with the stored TAN.
  Result<int64_t, CwaError> UploadOwnTeks(
      CwaBackend* backend, const std::set<std::string>& visited_countries);

  // A compromised verification server channel can push a fabricated result.
  void AcceptResult(TestResult result) { believed_result_ = result; }

 private:
  World* world_;
  Bytes guid_;
  Bytes reg_token_;
  Bytes tan_;
  TestResult believed_result_ = TestResult::kPending;
};

// Testing-facility side of the flow: issues the guid QR and records the
// laboratory outcome with the contagious window.
class CwaTestCenter {
 public:
  CwaTestCenter(World* world, VerificationServer* vs)
      : world_(world), vs_(vs) {}

  Bytes IssueGuid() { return world_->rng().NextBytes(16); }

  void RecordPositive(const std::string& phone_name, const Bytes& guid,
                      int64_t window_start_day, int64_t window_end_day) {
    vs_->SetTestResult(guid, TestResult::kPositive);
    world_->EmitHAClaimInfected(phone_name, {window_start_day},
                                {window_end_day});
    world_->EmitTestPositive(phone_name, world_->current_day());
  }

 private:
  World* world_;
  VerificationServer* vs_;
};

}  // namespace enslab::cwa

#endif  // ENSLAB_CWA_H_
