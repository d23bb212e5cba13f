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

#ifndef ENSLAB_ADVERSARY_H_
#define ENSLAB_ADVERSARY_H_

#include <set>
#include <string>
#include <vector>

#include "enslab/cwa.h"
#include "enslab/dp3t.h"
#include "enslab/gaen.h"
#include "enslab/robert.h"
#include "enslab/world.h"

namespace enslab {

// Closed capability set of the adversary model. Every invocation against an
// agent appends a Corrupt(target, label, payload-digest) event; plain
// Bluetooth access is logged through BLErd/BLEwr instead.
enum class Capability {
  kBleRd,
  kBleWr,
  kCorruptPhoneKey,
  kCorruptPhoneReceived,
  kCorruptPhoneSend,
  kCorruptPhoneReceive,
  kCorruptPhoneTestDBRead,
  kCorruptPhoneTestDBWrite,
  kCorruptBState,
  kCorruptBReceive,
  kCorruptBSend,
  kCorruptBReceiveFromVS,
  kCorruptBReceiveFromPhone,
  kCorruptQRList,
  kCorruptBIDTable,
  kCorruptBFederationKey,
  kCorruptVSSendToTRSnB,
  kCorruptVSReceiveFromTRSnB,
  kCorruptVSSendToPhone,
  kCorruptVSReceiveFromPhone,
  kCorruptHAState,
  kCorruptHASend,
};

inline constexpr int kCapabilityCount = 22;

const char* CapabilityLabel(Capability capability);

enum class Role { kBluetooth, kPhone, kBackend, kVerificationServer, kHealthAuthority };

bool CapabilityValidForRole(Capability capability, Role role);

enum class AdversaryError { kInvalidCapability, kMissingKnowledge };

struct KnowledgeItem {
  Bytes value;
  std::string type;    // "gaen.tek", "robert.k_s", "robert.k_auth", ...
  std::string origin;  // capability label (or "derived" / "generated")
  std::string owner;   // agent the value belongs to, when meaningful
  int64_t day = -1;
  int64_t epoch = -1;
};

// Scripted Dolev-Yao attacker. Secrets enter the knowledge base only
// through capability invocations or own generation; everything the
// adversary emits must be in the derivable closure (asserted at emission).
class Adversary {
 public:
  explicit Adversary(World* world, std::string name = "adv");

  const std::string& name() const { return name_; }

  // Capability guard used by every typed helper; exposed for tests.
  Result<Unit, AdversaryError> Corrupt(Role role, Capability capability,
                                       const std::string& target,
                                       ByteView payload);

  // ---- Knowledge base ----
  bool Knows(ByteView value) const;
  void AddKnowledge(KnowledgeItem item);
  // Closure under the implemented primitives: day keys unroll to their
  // RPIK/AEMK, per-epoch RPIs and broadcast payloads; recorded hello
  // payloads decompose into their fields. No key guessing.
  void DeriveKnowledge();
  const std::vector<KnowledgeItem>& knowledge() const { return knowledge_; }
  std::vector<const KnowledgeItem*> ItemsOfType(const std::string& type) const;

  // ---- Bluetooth (no corruption needed, always logged) ----
  std::vector<Bytes> BleRead(const std::string& place);
  void BleWrite(const std::string& place, const Bytes& message);

  // ---- Phone compromise ----
  gaen::Tek StealDayKey(gaen::GaenPhone& phone, int64_t day);
  crypto::MacKey StealRobertPhoneKey(robert::RobertPhone& phone);
  std::vector<robert::ReceivedRecord> StealReceivedRecords(
      robert::RobertPhone& phone);
  gaen::ObservationDb StealObservations(gaen::GaenPhone& phone);
  void InjectObservation(gaen::GaenPhone& phone,
                         const gaen::ObservationEntry& entry);
  robert::QrCode InterceptQrDelivery(const std::string& phone_name,
                                     const robert::QrCode& qr);
  Bytes InterceptGuidDelivery(const std::string& phone_name,
                              const Bytes& guid);
  robert::UploadOutcome UploadAsPhone(robert::RobertBackend& backend,
                                      const std::string& phone_name,
                                      const robert::UploadMessage& message,
                                      std::optional<uint64_t> registered_id);
  Result<Unit, dp3t::Dp3tError> Dp3tUploadAsPhone(
      dp3t::Dp3tBackend& backend, const std::string& phone_name,
      const dp3t::UploadTuple& tuple);
  Result<int64_t, cwa::CwaError> CwaUploadAsPhone(
      cwa::CwaBackend& backend, const std::string& phone_name,
      const std::vector<cwa::UploadedTek>& teks, const Bytes& tan);
  std::vector<dp3t::TestDbEntry> ReadTestDb(dp3t::Dp3tPhone& phone);
  void WriteTestDb(dp3t::Dp3tPhone& phone, const dp3t::TestDbEntry& entry);

  // ---- Back-end compromise ----
  crypto::Prp64Key StealRobertServerState(robert::RobertBackend& backend);
  crypto::Key128 StealFederationKey(robert::RobertBackend& backend);
  std::vector<std::pair<uint64_t, crypto::MacKey>> StealIdTable(
      robert::RobertBackend& backend);
  robert::QrCode StealUnusedQr(robert::RobertBackend& backend);
  robert::PreHelloMessage CapturePreHello(robert::RobertBackend& backend,
                                          uint64_t id);
  robert::UploadMessage CaptureUploadInFlight(
      const std::string& backend_country, const robert::UploadMessage& message);
  void ForceRiskNotification(const std::string& backend_country,
                             robert::RobertPhone& phone, DayStamp day_close,
                             EpochStamp inst_close);
  crypto::SigKeyPair StealOperatorSigKeys(const std::string& backend_country,
                                          const crypto::SigKeyPair& keys);

  // ---- Verification server / health authority compromise ----
  Bytes CaptureVsGuid(cwa::VerificationServer& vs, const Bytes& guid);
  void FabricateVsResult(cwa::VerificationServer& vs, cwa::CwaPhone& phone,
                         cwa::TestResult result);
  crypto::SigKeyPair StealHaSigningKey(dp3t::Dp3tHealthAuthority& ha);
  void HaSendFakeResult(const std::string& ha_country, dp3t::Dp3tPhone& phone,
                        std::vector<dp3t::AuthCode> acs);

  // ---- Derivation and minting (pure computation over known values) ----
  gaen::Tek ForgeTek(int64_t day);
  Result<Bytes, AdversaryError> PayloadFromTek(const gaen::Tek& tek,
                                               int64_t epoch_index);
  Result<robert::HelloMsg, AdversaryError> MintRobertHello(
      const crypto::Prp64Key& server_key, const crypto::Key128& federation_key,
      uint8_t country_code, int64_t epoch, uint64_t id,
      const crypto::MacKey& auth_key, uint16_t t16);
  Result<robert::HelloMsg, AdversaryError> MintHelloFromEntry(
      const robert::EbidEntry& entry, const crypto::MacKey& auth_key,
      uint16_t t16);
  Result<robert::QrCode, AdversaryError> MintRobertQr(
      const crypto::MacKey& mint_key, uint8_t country_code,
      robert::QrKind kind, int64_t start_day, int64_t window_start_day,
      int64_t window_end_day, bool bind_window);
  Result<dp3t::AuthCode, AdversaryError> ForgeAuthCode(
      const crypto::SigKeyPair& ha_keys, const crypto::Digest256& h,
      int64_t issue_day);
  Result<std::vector<gaen::ReleasedKey>, AdversaryError> ForgeReleasedBundle(
      const crypto::SigKeyPair& operator_keys,
      const std::vector<gaen::Tek>& teks, const std::string& country);

  // Public key-bundle download; no capability involved.
  std::vector<gaen::ReleasedKey> FetchPublishedKeys(cwa::CwaBackend& backend);

 private:
  void Record(ByteView value, std::string type, std::string origin,
              std::string owner = {}, int64_t day = -1, int64_t epoch = -1);
  void MustKnow(ByteView value, const char* what) const;

  World* world_;
  std::string name_;
  std::vector<KnowledgeItem> knowledge_;
  std::set<Bytes> known_values_;
};

}  // namespace enslab

#endif  // ENSLAB_ADVERSARY_H_
