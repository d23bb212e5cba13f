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

#ifndef ENSLAB_ROBERT_H_
#define ENSLAB_ROBERT_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "enslab/crypto.h"
#include "enslab/world.h"

// ROBERT roles and flows: registration, EBID provisioning, HELLO broadcast,
// QR-authorised upload with the server-side checks (1)-(9), risk status and
// federation between country back ends.
namespace enslab::robert {

enum class QrKind { kLong, kShort };

// Upload-authorisation token. The random token is tagged by the issuing
// back end's mint key, so validity is checkable statelessly and back-end
// state compromise suffices to forge fresh tokens.
struct QrCode {
  Bytes token;  // 16 random bytes
  QrKind kind = QrKind::kLong;
  int64_t start_day = 0;
  Tick issue_tick;
  uint8_t country_code = 0;
  crypto::Tag40 tag{};
  // Contagious window declared by the HA. Carried alongside the token and
  // only covered by the tag when robert.bind_window_to_token is set.
  int64_t window_start_day = 0;
  int64_t window_end_day = 0;
};

struct HelloMsg {
  uint8_t ecc = 0;
  crypto::Block64 ebid{};
  uint16_t t16 = 0;
  crypto::Tag40 mac{};

  Bytes MacInput() const;
  Bytes Serialize() const;
  static bool Parse(ByteView bytes, HelloMsg* out);
};

inline constexpr size_t kHelloSize = 16;  // 1 + 8 + 2 + 5

struct ReceivedRecord {
  HelloMsg hello;
  Tick reception_tick;
};

struct UploadRecord {
  Bytes hello_bytes;
  Tick claimed_reception_tick;
};

struct UploadMessage {
  QrCode qr;
  std::vector<UploadRecord> records;
  // Window claimed at upload time (not authenticated by default).
  int64_t window_start_day = 0;
  int64_t window_end_day = 0;
};

enum class BatchError { kInvalidToken, kTokenExpired, kTokenReused };
enum class RecordError {
  kMalformed,
  kStaleTimestamp,
  kUnknownCountry,
  kUnknownEmitter,
  kEpochMismatch,
  kBadMac,
  kWindowViolation,
  kBatchLimit,
  kSelfFiltered,
};

struct UploadOutcome {
  std::optional<BatchError> batch_error;
  int64_t accepted = 0;
  std::vector<std::pair<size_t, RecordError>> rejected;
};

enum class StatusError {
  kMalformed,
  kStaleTimestamp,
  kUnknownCountry,
  kUnknownEmitter,
  kEpochMismatch,
  kBadMac,
};

struct StatusResponse {
  bool at_risk = false;
  std::vector<int64_t> exposed_epochs;  // country-aligned
};

struct EbidEntry {
  int64_t epoch = 0;  // country-aligned
  crypto::Block64 ebid{};
  uint8_t ecc = 0;
};

// The pre-HELLO provisioning message from back end to phone; travels over
// the in-model secure channel (encrypted under the phone's K_enc).
struct PreHelloMessage {
  uint64_t id = 0;
  std::vector<EbidEntry> entries;
};

enum class RobertError { kAlreadyRegistered, kUnknownId, kScheduleGap, kNotPresent };

// Stateless building blocks shared by the back end and by an adversary who
// has obtained the corresponding keys.
crypto::Block64 MintEbid(const crypto::Prp64Key& server_key, int64_t epoch,
                         uint64_t id);
uint8_t MintEcc(const crypto::Key128& federation_key,
                const crypto::Block64& ebid, uint8_t country_code);
HelloMsg MakeHello(uint8_t ecc, const crypto::Block64& ebid, uint16_t t16,
                   const crypto::MacKey& auth_key);
Bytes QrTagInputFor(const QrCode& qr, bool bind_window);
UploadMessage MakeUploadMessage(const QrCode& qr,
                                const std::vector<ReceivedRecord>& records,
                                int64_t window_start_day,
                                int64_t window_end_day);

class RobertBackend {
 public:
  RobertBackend(World* world, std::string country_name, uint8_t country_code,
                int64_t service_start_s);

  const std::string& country_name() const { return country_name_; }
  uint8_t country_code() const { return country_code_; }
  const EpochAlignment& alignment() const { return alignment_; }
  const std::array<uint8_t, 32>& dh_public() const {
    return dh_keys_.public_key;
  }

  void ConnectPeer(RobertBackend* peer);

  struct RegistrationReply {
    uint64_t id = 0;
    std::array<uint8_t, 32> server_public{};
  };
  RegistrationReply Register(const std::array<uint8_t, 32>& phone_public);

  Result<PreHelloMessage, RobertError> ProvisionEbids(uint64_t id,
                                                      int64_t epoch_begin,
                                                      int64_t epoch_end);

  QrCode IssueQr(QrKind kind, int64_t start_day, int64_t window_start_day,
                 int64_t window_end_day);
  std::vector<QrCode> IssueSheet(int64_t first_day);
  bool QrTagValid(const QrCode& qr) const;

  // Runs checks (1)-(9) over the batch; `uploader_registered_id` is the id
  // bound to the authenticated phone channel the upload arrived on, used
  // only by the self-filter mitigation.
  UploadOutcome ProcessUpload(const UploadMessage& upload,
                              const std::string& uploader_name,
                              std::optional<uint64_t> uploader_registered_id);

  Result<StatusResponse, StatusError> ProcessStatusRequest(
      const HelloMsg& request);

  // State surfaces (inspected by tests and by corruption capabilities).
  const std::map<uint64_t, std::set<int64_t>>& lee() const { return lee_; }
  const std::vector<QrCode>& qr_issued() const { return qr_issued_; }
  const crypto::Prp64Key& server_key() const { return server_key_; }
  const crypto::Key128& federation_key() const { return federation_key_; }
  const crypto::MacKey& qr_mint_key() const { return qr_mint_key_; }
  struct PhoneEntry {
    crypto::Key256 enc{};
    crypto::MacKey auth{};
  };
  const std::map<uint64_t, PhoneEntry>& id_table() const { return id_table_; }
  const PreHelloMessage* LastPreHelloFor(uint64_t id) const;

 private:
  friend class RobertFederation;

  // Steps (5)-(9) for one record, at the back end owning the EBID.
  Result<Unit, RecordError> ProcessRecordLocal(
      const HelloMsg& hello, Tick claimed_reception,
      std::optional<uint64_t> uploader_registered_id);

  Bytes QrTagInput(const QrCode& qr) const;

  World* world_;
  std::string country_name_;
  uint8_t country_code_;
  EpochAlignment alignment_;
  crypto::Prp64Key server_key_{};
  crypto::Key128 federation_key_{};
  crypto::MacKey qr_mint_key_{};
  crypto::DhKeyPair dh_keys_{};
  std::map<uint64_t, PhoneEntry> id_table_;
  std::map<uint64_t, std::set<int64_t>> lee_;
  std::set<uint64_t> notified_;
  std::vector<QrCode> qr_issued_;
  std::set<Bytes> used_tokens_;
  std::map<uint8_t, RobertBackend*> peers_;
  std::map<uint64_t, PreHelloMessage> last_pre_hello_;
};

class RobertPhone {
 public:
  RobertPhone(World* world, std::string name, std::string country);

  const std::string& name() const { return name_; }
  uint64_t id() const { return id_; }
  bool registered() const { return registered_; }
  const crypto::MacKey& auth_key() const { return auth_key_; }
  const crypto::DhKeyPair& dh_keys() const { return dh_keys_; }
  const std::vector<ReceivedRecord>& received() const { return received_; }
  const std::map<int64_t, EbidEntry>& schedule() const { return schedule_; }
  bool at_risk() const { return risk_flag_; }

  Result<Unit, RobertError> Register(RobertBackend* backend);
  void InstallPreHello(const PreHelloMessage& msg);

  Result<Unit, RobertError> BroadcastHello(const std::string& place);
  Result<Unit, WorldError> ScanAndStore(const std::string& place);

  // Hellos received with reception day inside [window_start, window_end].
  std::vector<ReceivedRecord> RecordsInWindow(int64_t window_start_day,
                                              int64_t window_end_day) const;

  UploadMessage BuildUpload(const QrCode& qr,
                            const std::vector<ReceivedRecord>& records,
                            int64_t window_start_day,
                            int64_t window_end_day) const;

  // Builds the authenticated HELLO-shaped payload for an arbitrary tick;
  // used for the current-epoch status request and for desk-scale batch
  // construction in tests.
  Result<HelloMsg, RobertError> BuildHelloForTick(Tick tick) const;

  // Sends a status request over the phone's channel; on an at-risk reply
  // logs one PClaimAtRisk per exposed epoch.
  Result<bool, StatusError> RequestStatus();

  // A compromised back end can push an unsolicited at-risk response; the
  // phone processes it like a genuine one.
  void AcceptRiskNotification(DayStamp day_close, EpochStamp inst_close);

 private:
  World* world_;
  std::string name_;
  std::string country_;
  RobertBackend* backend_ = nullptr;
  bool registered_ = false;
  uint64_t id_ = 0;
  crypto::DhKeyPair dh_keys_{};
  crypto::Key256 enc_key_{};
  crypto::MacKey auth_key_{};
  std::map<int64_t, EbidEntry> schedule_;  // country epoch -> entry
  std::vector<ReceivedRecord> received_;
  bool risk_flag_ = false;
};

// Health authority for one ROBERT country: diagnoses phones, declares the
// contagious window and hands out upload QR codes.
class RobertHealthAuthority {
 public:
  RobertHealthAuthority(World* world, RobertBackend* backend)
      : world_(world), backend_(backend) {}

  QrCode Diagnose(const std::string& phone_name, int64_t window_start_day,
                  int64_t window_end_day, QrKind kind = QrKind::kLong);
  std::vector<QrCode> IssueSheet(int64_t first_day) {
    return backend_->IssueSheet(first_day);
  }

 private:
  World* world_;
  RobertBackend* backend_;
};

}  // namespace enslab::robert

#endif  // ENSLAB_ROBERT_H_
