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

#include "enslab/adversary.h"

#include <cassert>
#include <cstdlib>
#include <iostream>

namespace enslab {

const char* CapabilityLabel(Capability capability) {
  switch (capability) {
    case Capability::kBleRd: return "BLErd";
    case Capability::kBleWr: return "BLEwr";
    case Capability::kCorruptPhoneKey: return "CorruptPhoneKey";
    case Capability::kCorruptPhoneReceived: return "CorruptPhoneReceived";
    case Capability::kCorruptPhoneSend: return "CorruptPhoneSend";
    case Capability::kCorruptPhoneReceive: return "CorruptPhoneReceive";
    case Capability::kCorruptPhoneTestDBRead: return "CorruptPhoneTestDBRead";
    case Capability::kCorruptPhoneTestDBWrite: return "CorruptPhoneTestDBWrite";
    case Capability::kCorruptBState: return "CorruptBState";
    case Capability::kCorruptBReceive: return "CorruptBReceive";
    case Capability::kCorruptBSend: return "CorruptBSend";
    case Capability::kCorruptBReceiveFromVS: return "CorruptBReceiveFromVS";
    case Capability::kCorruptBReceiveFromPhone:
      return "CorruptBReceiveFromPhone";
    case Capability::kCorruptQRList: return "CorruptQRList";
    case Capability::kCorruptBIDTable: return "CorruptBIDTable";
    case Capability::kCorruptBFederationKey: return "CorruptBFederationKey";
    case Capability::kCorruptVSSendToTRSnB: return "CorruptVSSendToTRSnB";
    case Capability::kCorruptVSReceiveFromTRSnB:
      return "CorruptVSReceiveFromTRSnB";
    case Capability::kCorruptVSSendToPhone: return "CorruptVSSendToPhone";
    case Capability::kCorruptVSReceiveFromPhone:
      return "CorruptVSReceiveFromPhone";
    case Capability::kCorruptHAState: return "CorruptHAState";
    case Capability::kCorruptHASend: return "CorruptHASend";
  }
  return "?";
}

bool CapabilityValidForRole(Capability capability, Role role) {
  switch (capability) {
    case Capability::kBleRd:
    case Capability::kBleWr:
      return role == Role::kBluetooth;
    case Capability::kCorruptPhoneKey:
    case Capability::kCorruptPhoneReceived:
    case Capability::kCorruptPhoneSend:
    case Capability::kCorruptPhoneReceive:
    case Capability::kCorruptPhoneTestDBRead:
    case Capability::kCorruptPhoneTestDBWrite:
      return role == Role::kPhone;
    case Capability::kCorruptBState:
    case Capability::kCorruptBReceive:
    case Capability::kCorruptBSend:
    case Capability::kCorruptBReceiveFromVS:
    case Capability::kCorruptBReceiveFromPhone:
    case Capability::kCorruptQRList:
    case Capability::kCorruptBIDTable:
    case Capability::kCorruptBFederationKey:
      return role == Role::kBackend;
    case Capability::kCorruptVSSendToTRSnB:
    case Capability::kCorruptVSReceiveFromTRSnB:
    case Capability::kCorruptVSSendToPhone:
    case Capability::kCorruptVSReceiveFromPhone:
      return role == Role::kVerificationServer;
    case Capability::kCorruptHAState:
    case Capability::kCorruptHASend:
      return role == Role::kHealthAuthority;
  }
  return false;
}

Adversary::Adversary(World* world, std::string name)
    : world_(world), name_(std::move(name)) {}

Result<Unit, AdversaryError> Adversary::Corrupt(Role role,
                                                Capability capability,
                                                const std::string& target,
                                                ByteView payload) {
  if (!CapabilityValidForRole(capability, role)) {
    return AdversaryError::kInvalidCapability;
  }
  world_->EmitCorrupt(target, CapabilityLabel(capability),
                      crypto::DigestHex(payload));
  return Unit{};
}

bool Adversary::Knows(ByteView value) const {
  return known_values_.count(Bytes(value.begin(), value.end())) > 0;
}

void Adversary::AddKnowledge(KnowledgeItem item) {
  known_values_.insert(item.value);
  knowledge_.push_back(std::move(item));
}

void Adversary::Record(ByteView value, std::string type, std::string origin,
                       std::string owner, int64_t day, int64_t epoch) {
  KnowledgeItem item;
  item.value = Bytes(value.begin(), value.end());
  item.type = std::move(type);
  item.origin = std::move(origin);
  item.owner = std::move(owner);
  item.day = day;
  item.epoch = epoch;
  AddKnowledge(std::move(item));
}

void Adversary::MustKnow(ByteView value, const char* what) const {
  if (!Knows(value)) {
    std::cerr << "adversary emitted value outside its knowledge: " << what
              << "\n";
    std::abort();
  }
}

std::vector<const KnowledgeItem*> Adversary::ItemsOfType(
    const std::string& type) const {
  std::vector<const KnowledgeItem*> out;
  for (const auto& item : knowledge_) {
    if (item.type == type) out.push_back(&item);
  }
  return out;
}

void Adversary::DeriveKnowledge() {
  // Fixpoint is reached in one pass: day keys unroll, payloads decompose.
  std::vector<KnowledgeItem> derived;
  const auto& time = world_->config().time;
  for (const auto& item : knowledge_) {
    if (item.type == "gaen.tek" && item.value.size() == 16 && item.day >= 0) {
      gaen::Tek tek;
      std::copy(item.value.begin(), item.value.end(), tek.key.begin());
      tek.day = item.day;
      crypto::Key128 rpik = gaen::RpikFor(tek);
      crypto::Key128 aemk = gaen::AemkFor(tek);
      KnowledgeItem k1{crypto::ToVec(rpik), "gaen.rpik", "derived", item.owner,
                       item.day, -1};
      KnowledgeItem k2{crypto::ToVec(aemk), "gaen.aemk", "derived", item.owner,
                       item.day, -1};
      derived.push_back(k1);
      derived.push_back(k2);
      int64_t first = item.day * time.epochs_per_day;
      for (int64_t j = first; j < first + time.epochs_per_day; ++j) {
        crypto::Block128 rpi = gaen::RpiFor(tek, j);
        derived.push_back(KnowledgeItem{crypto::ToVec(rpi), "gaen.rpi",
                                        "derived", item.owner, item.day, j});
        Bytes payload = gaen::BroadcastPayload(tek, j, 1, 0x14);
        derived.push_back(KnowledgeItem{payload, "gaen.payload", "derived",
                                        item.owner, item.day, j});
      }
    } else if (item.type == "ble.msg" && item.value.size() == robert::kHelloSize) {
      robert::HelloMsg hello;
      if (robert::HelloMsg::Parse(item.value, &hello)) {
        derived.push_back(KnowledgeItem{crypto::ToVec(hello.ebid),
                                        "robert.ebid", "derived", item.owner,
                                        -1, -1});
      }
    }
  }
  for (auto& item : derived) {
    if (!Knows(item.value)) AddKnowledge(std::move(item));
  }
}

std::vector<Bytes> Adversary::BleRead(const std::string& place) {
  auto msgs = world_->AdversaryBleRead(name_, place);
  for (const auto& m : msgs) Record(m, "ble.msg", "BLErd");
  return msgs;
}

void Adversary::BleWrite(const std::string& place, const Bytes& message) {
  MustKnow(message, "BLEwr payload");
  world_->AdversaryBleWrite(name_, place, message);
}

gaen::Tek Adversary::StealDayKey(gaen::GaenPhone& phone, int64_t day) {
  const gaen::Tek& tek = phone.TekForDay(day);
  Corrupt(Role::kPhone, Capability::kCorruptPhoneKey, phone.name(),
          crypto::View(tek.key));
  Record(crypto::View(tek.key), "gaen.tek", "CorruptPhoneKey", phone.name(),
         day);
  return tek;
}

crypto::MacKey Adversary::StealRobertPhoneKey(robert::RobertPhone& phone) {
  const crypto::MacKey& key = phone.auth_key();
  Corrupt(Role::kPhone, Capability::kCorruptPhoneKey, phone.name(),
          crypto::View(key));
  Record(crypto::View(key), "robert.k_auth", "CorruptPhoneKey", phone.name());
  return key;
}

std::vector<robert::ReceivedRecord> Adversary::StealReceivedRecords(
    robert::RobertPhone& phone) {
  Bytes blob;
  for (const auto& r : phone.received()) {
    Bytes bytes = r.hello.Serialize();
    Record(bytes, "ble.msg", "CorruptPhoneReceived", phone.name());
    blob.insert(blob.end(), bytes.begin(), bytes.end());
  }
  Corrupt(Role::kPhone, Capability::kCorruptPhoneReceived, phone.name(), blob);
  return phone.received();
}

gaen::ObservationDb Adversary::StealObservations(gaen::GaenPhone& phone) {
  Bytes blob;
  for (const auto& e : phone.observations().entries) {
    Record(crypto::View(e.rpi), "gaen.rpi", "CorruptPhoneReceived",
           phone.name(), -1, e.epoch);
    blob.insert(blob.end(), e.rpi.begin(), e.rpi.end());
  }
  Corrupt(Role::kPhone, Capability::kCorruptPhoneReceived, phone.name(), blob);
  return phone.observations();
}

void Adversary::InjectObservation(gaen::GaenPhone& phone,
                                  const gaen::ObservationEntry& entry) {
  Corrupt(Role::kPhone, Capability::kCorruptPhoneTestDBWrite, phone.name(),
          crypto::View(entry.rpi));
  phone.mutable_observations()->entries.push_back(entry);
}

robert::QrCode Adversary::InterceptQrDelivery(const std::string& phone_name,
                                              const robert::QrCode& qr) {
  Corrupt(Role::kPhone, Capability::kCorruptPhoneReceive, phone_name,
          qr.token);
  Record(qr.token, "robert.qr", "CorruptPhoneReceive", phone_name);
  return qr;
}

Bytes Adversary::InterceptGuidDelivery(const std::string& phone_name,
                                       const Bytes& guid) {
  Corrupt(Role::kPhone, Capability::kCorruptPhoneReceive, phone_name, guid);
  Record(guid, "cwa.guid", "CorruptPhoneReceive", phone_name);
  return guid;
}

robert::UploadOutcome Adversary::UploadAsPhone(
    robert::RobertBackend& backend, const std::string& phone_name,
    const robert::UploadMessage& message,
    std::optional<uint64_t> registered_id) {
  Bytes blob = message.qr.token;
  for (const auto& r : message.records) {
    blob.insert(blob.end(), r.hello_bytes.begin(), r.hello_bytes.end());
  }
  Corrupt(Role::kPhone, Capability::kCorruptPhoneSend, phone_name, blob);
  return backend.ProcessUpload(message, phone_name, registered_id);
}

Result<Unit, dp3t::Dp3tError> Adversary::Dp3tUploadAsPhone(
    dp3t::Dp3tBackend& backend, const std::string& phone_name,
    const dp3t::UploadTuple& tuple) {
  Corrupt(Role::kPhone, Capability::kCorruptPhoneSend, phone_name, tuple.tek);
  return backend.ProcessUpload(tuple);
}

Result<int64_t, cwa::CwaError> Adversary::CwaUploadAsPhone(
    cwa::CwaBackend& backend, const std::string& phone_name,
    const std::vector<cwa::UploadedTek>& teks, const Bytes& tan) {
  Bytes blob = tan;
  for (const auto& t : teks) blob.insert(blob.end(), t.tek.begin(), t.tek.end());
  Corrupt(Role::kPhone, Capability::kCorruptPhoneSend, phone_name, blob);
  return backend.ProcessUpload(teks, tan, {});
}

std::vector<dp3t::TestDbEntry> Adversary::ReadTestDb(dp3t::Dp3tPhone& phone) {
  Bytes blob;
  for (const auto& e : phone.test_db()) {
    Record(crypto::View(e.tek.key), "gaen.tek", "CorruptPhoneTestDBRead",
           phone.name(), e.tek.day);
    Record(e.blind, "dp3t.blind", "CorruptPhoneTestDBRead", phone.name());
    blob.insert(blob.end(), e.blind.begin(), e.blind.end());
  }
  Corrupt(Role::kPhone, Capability::kCorruptPhoneTestDBRead, phone.name(),
          blob);
  return phone.test_db();
}

void Adversary::WriteTestDb(dp3t::Dp3tPhone& phone,
                            const dp3t::TestDbEntry& entry) {
  Corrupt(Role::kPhone, Capability::kCorruptPhoneTestDBWrite, phone.name(),
          crypto::View(entry.tek.key));
  phone.mutable_test_db()->push_back(entry);
}

crypto::Prp64Key Adversary::StealRobertServerState(
    robert::RobertBackend& backend) {
  Corrupt(Role::kBackend, Capability::kCorruptBState, backend.country_name(),
          crypto::View(backend.server_key()));
  Record(crypto::View(backend.server_key()), "robert.k_s", "CorruptBState",
         backend.country_name());
  Record(crypto::View(backend.qr_mint_key()), "robert.qr_mint_key",
         "CorruptBState", backend.country_name());
  return backend.server_key();
}

crypto::Key128 Adversary::StealFederationKey(robert::RobertBackend& backend) {
  Corrupt(Role::kBackend, Capability::kCorruptBFederationKey,
          backend.country_name(), crypto::View(backend.federation_key()));
  Record(crypto::View(backend.federation_key()), "robert.k_fed",
         "CorruptBFederationKey", backend.country_name());
  return backend.federation_key();
}

std::vector<std::pair<uint64_t, crypto::MacKey>> Adversary::StealIdTable(
    robert::RobertBackend& backend) {
  std::vector<std::pair<uint64_t, crypto::MacKey>> out;
  Bytes blob;
  for (const auto& [id, entry] : backend.id_table()) {
    out.emplace_back(id, entry.auth);
    Record(crypto::View(entry.auth), "robert.k_auth", "CorruptBIDTable",
           std::to_string(id));
    blob.insert(blob.end(), entry.auth.begin(), entry.auth.end());
  }
  Corrupt(Role::kBackend, Capability::kCorruptBIDTable, backend.country_name(),
          blob);
  return out;
}

robert::QrCode Adversary::StealUnusedQr(robert::RobertBackend& backend) {
  assert(!backend.qr_issued().empty());
  const robert::QrCode& qr = backend.qr_issued().front();
  Corrupt(Role::kBackend, Capability::kCorruptQRList, backend.country_name(),
          qr.token);
  Record(qr.token, "robert.qr", "CorruptQRList", backend.country_name());
  return qr;
}

robert::PreHelloMessage Adversary::CapturePreHello(
    robert::RobertBackend& backend, uint64_t id) {
  const robert::PreHelloMessage* msg = backend.LastPreHelloFor(id);
  assert(msg != nullptr);
  Bytes blob;
  for (const auto& e : msg->entries) {
    Record(crypto::View(e.ebid), "robert.ebid", "CorruptBSend",
           std::to_string(id), -1, e.epoch);
    blob.insert(blob.end(), e.ebid.begin(), e.ebid.end());
  }
  Corrupt(Role::kBackend, Capability::kCorruptBSend, backend.country_name(),
          blob);
  return *msg;
}

robert::UploadMessage Adversary::CaptureUploadInFlight(
    const std::string& backend_country, const robert::UploadMessage& message) {
  Corrupt(Role::kBackend, Capability::kCorruptBReceive, backend_country,
          message.qr.token);
  Record(message.qr.token, "robert.qr", "CorruptBReceive", backend_country);
  for (const auto& r : message.records) {
    Record(r.hello_bytes, "ble.msg", "CorruptBReceive", backend_country);
  }
  return message;
}

void Adversary::ForceRiskNotification(const std::string& backend_country,
                                      robert::RobertPhone& phone,
                                      DayStamp day_close,
                                      EpochStamp inst_close) {
  uint8_t payload[2] = {1, 0};
  Corrupt(Role::kBackend, Capability::kCorruptBSend, backend_country,
          ByteView(payload, 2));
  phone.AcceptRiskNotification(day_close, inst_close);
}

crypto::SigKeyPair Adversary::StealOperatorSigKeys(
    const std::string& backend_country, const crypto::SigKeyPair& keys) {
  Corrupt(Role::kBackend, Capability::kCorruptBState, backend_country,
          crypto::View(keys.secret));
  Record(crypto::View(keys.secret), "operator.sig_sk", "CorruptBState",
         backend_country);
  return keys;
}

Bytes Adversary::CaptureVsGuid(cwa::VerificationServer& vs, const Bytes& guid) {
  Corrupt(Role::kVerificationServer, Capability::kCorruptVSReceiveFromPhone,
          vs.country(), guid);
  Record(guid, "cwa.guid", "CorruptVSReceiveFromPhone", vs.country());
  return guid;
}

void Adversary::FabricateVsResult(cwa::VerificationServer& vs,
                                  cwa::CwaPhone& phone,
                                  cwa::TestResult result) {
  uint8_t payload[1] = {static_cast<uint8_t>(result)};
  Corrupt(Role::kVerificationServer, Capability::kCorruptVSSendToPhone,
          vs.country(), ByteView(payload, 1));
  phone.AcceptResult(result);
}

crypto::SigKeyPair Adversary::StealHaSigningKey(
    dp3t::Dp3tHealthAuthority& ha) {
  Corrupt(Role::kHealthAuthority, Capability::kCorruptHAState, ha.country(),
          crypto::View(ha.sig_keys().secret));
  Record(crypto::View(ha.sig_keys().secret), "ha.sig_sk", "CorruptHAState",
         ha.country());
  return ha.sig_keys();
}

void Adversary::HaSendFakeResult(const std::string& ha_country,
                                 dp3t::Dp3tPhone& phone,
                                 std::vector<dp3t::AuthCode> acs) {
  Bytes blob;
  for (const auto& ac : acs) blob.insert(blob.end(), ac.h.begin(), ac.h.end());
  Corrupt(Role::kHealthAuthority, Capability::kCorruptHASend, ha_country,
          blob);
  phone.StoreAuthCodes(std::move(acs));
}

gaen::Tek Adversary::ForgeTek(int64_t day) {
  gaen::Tek tek;
  tek.key = world_->rng().NextArray<16>();
  tek.day = day;
  Record(crypto::View(tek.key), "gaen.tek", "generated", name_, day);
  return tek;
}

Result<Bytes, AdversaryError> Adversary::PayloadFromTek(const gaen::Tek& tek,
                                                        int64_t epoch_index) {
  if (!Knows(crypto::View(tek.key))) return AdversaryError::kMissingKnowledge;
  Bytes payload = gaen::BroadcastPayload(tek, epoch_index, 1, 0x14);
  Record(payload, "gaen.payload", "derived", name_, tek.day, epoch_index);
  return payload;
}

Result<robert::HelloMsg, AdversaryError> Adversary::MintRobertHello(
    const crypto::Prp64Key& server_key, const crypto::Key128& federation_key,
    uint8_t country_code, int64_t epoch, uint64_t id,
    const crypto::MacKey& auth_key, uint16_t t16) {
  if (!Knows(crypto::View(server_key)) ||
      !Knows(crypto::View(federation_key)) ||
      !Knows(crypto::View(auth_key))) {
    return AdversaryError::kMissingKnowledge;
  }
  crypto::Block64 ebid = robert::MintEbid(server_key, epoch, id);
  uint8_t ecc = robert::MintEcc(federation_key, ebid, country_code);
  robert::HelloMsg hello = robert::MakeHello(ecc, ebid, t16, auth_key);
  Record(hello.Serialize(), "ble.msg", "derived", name_, -1, epoch);
  return hello;
}

Result<robert::HelloMsg, AdversaryError> Adversary::MintHelloFromEntry(
    const robert::EbidEntry& entry, const crypto::MacKey& auth_key,
    uint16_t t16) {
  if (!Knows(crypto::View(entry.ebid)) || !Knows(crypto::View(auth_key))) {
    return AdversaryError::kMissingKnowledge;
  }
  robert::HelloMsg hello =
      robert::MakeHello(entry.ecc, entry.ebid, t16, auth_key);
  Record(hello.Serialize(), "ble.msg", "derived", name_, -1, entry.epoch);
  return hello;
}

Result<robert::QrCode, AdversaryError> Adversary::MintRobertQr(
    const crypto::MacKey& mint_key, uint8_t country_code, robert::QrKind kind,
    int64_t start_day, int64_t window_start_day, int64_t window_end_day,
    bool bind_window) {
  if (!Knows(crypto::View(mint_key))) return AdversaryError::kMissingKnowledge;
  robert::QrCode qr;
  qr.token = world_->rng().NextBytes(16);
  qr.kind = kind;
  qr.start_day = start_day;
  qr.issue_tick = world_->now();
  qr.country_code = country_code;
  qr.window_start_day = window_start_day;
  qr.window_end_day = window_end_day;
  qr.tag = crypto::Mac40(mint_key, robert::QrTagInputFor(qr, bind_window));
  Record(qr.token, "robert.qr", "derived", name_);
  return qr;
}

Result<dp3t::AuthCode, AdversaryError> Adversary::ForgeAuthCode(
    const crypto::SigKeyPair& ha_keys, const crypto::Digest256& h,
    int64_t issue_day) {
  if (!Knows(crypto::View(ha_keys.secret))) {
    return AdversaryError::kMissingKnowledge;
  }
  dp3t::AuthCode ac;
  ac.h = h;
  ac.issue_day = issue_day;
  ac.signature = crypto::Sign(ha_keys, dp3t::AuthCodeMessage(h, issue_day));
  return ac;
}

Result<std::vector<gaen::ReleasedKey>, AdversaryError>
Adversary::ForgeReleasedBundle(const crypto::SigKeyPair& operator_keys,
                               const std::vector<gaen::Tek>& teks,
                               const std::string& country) {
  if (!Knows(crypto::View(operator_keys.secret))) {
    return AdversaryError::kMissingKnowledge;
  }
  std::vector<gaen::ReleasedKey> bundle;
  for (const auto& tek : teks) {
    if (!Knows(crypto::View(tek.key))) {
      return AdversaryError::kMissingKnowledge;
    }
    gaen::ReleasedKey key;
    key.tek = crypto::ToVec(tek.key);
    key.day = tek.day;
    key.country = country;
    key.signature = crypto::Sign(operator_keys,
                                 gaen::ReleasedKeyMessage(key.tek, key.day));
    bundle.push_back(std::move(key));
  }
  return bundle;
}

std::vector<gaen::ReleasedKey> Adversary::FetchPublishedKeys(
    cwa::CwaBackend& backend) {
  auto keys = backend.FetchKeys();
  for (const auto& key : keys) {
    int64_t day = key.day;
    Record(key.tek, "gaen.tek", "published", backend.country(), day);
  }
  return keys;
}

}  // namespace enslab
