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

#include "enslab/robert.h"

#include <algorithm>
#include <cstring>

namespace enslab::robert {

Bytes HelloMsgMacInput(uint8_t ecc, const crypto::Block64& ebid, uint16_t t16) {
  Bytes msg;
  msg.push_back(ecc);
  msg.insert(msg.end(), ebid.begin(), ebid.end());
  uint8_t t[2];
  PutBe16(t16, t);
  msg.insert(msg.end(), t, t + 2);
  return msg;
}

Bytes HelloMsg::MacInput() const { return HelloMsgMacInput(ecc, ebid, t16); }

Bytes HelloMsg::Serialize() const {
  Bytes out = MacInput();
  out.insert(out.end(), mac.begin(), mac.end());
  return out;
}

bool HelloMsg::Parse(ByteView bytes, HelloMsg* out) {
  if (bytes.size() != kHelloSize) return false;
  out->ecc = bytes[0];
  std::memcpy(out->ebid.data(), bytes.data() + 1, 8);
  out->t16 = GetBe16(bytes.data() + 9);
  std::memcpy(out->mac.data(), bytes.data() + 11, 5);
  return true;
}

crypto::Block64 MintEbid(const crypto::Prp64Key& server_key, int64_t epoch,
                         uint64_t id) {
  return crypto::Prp64Encrypt(
      server_key, crypto::PackEpochId(static_cast<uint32_t>(epoch), id));
}

uint8_t MintEcc(const crypto::Key128& federation_key,
                const crypto::Block64& ebid, uint8_t country_code) {
  // The EBID is zero-padded to one AES block; the first output byte is
  // xored with the country code.
  crypto::Block128 block{};
  std::memcpy(block.data(), ebid.data(), ebid.size());
  crypto::Block128 enc = crypto::Block128Encrypt(federation_key, block);
  return static_cast<uint8_t>(enc[0] ^ country_code);
}

HelloMsg MakeHello(uint8_t ecc, const crypto::Block64& ebid, uint16_t t16,
                   const crypto::MacKey& auth_key) {
  HelloMsg hello;
  hello.ecc = ecc;
  hello.ebid = ebid;
  hello.t16 = t16;
  hello.mac = crypto::Mac40(auth_key, HelloMsgMacInput(ecc, ebid, t16));
  return hello;
}

RobertBackend::RobertBackend(World* world, std::string country_name,
                             uint8_t country_code, int64_t service_start_s)
    : world_(world),
      country_name_(std::move(country_name)),
      country_code_(country_code),
      alignment_(service_start_s == 0
                     ? EpochAlignment::Unix()
                     : EpochAlignment::Country(service_start_s)) {
  server_key_ = world_->rng().NextArray<24>();
  federation_key_ = world_->rng().NextArray<16>();
  qr_mint_key_ = world_->rng().NextArray<32>();
  dh_keys_ = crypto::DhGenerate(world_->rng());
  peers_[country_code_] = this;
}

void RobertBackend::ConnectPeer(RobertBackend* peer) {
  peers_[peer->country_code()] = peer;
  peer->peers_[country_code_] = this;
  // Federated deployments share the federation key.
  peer->federation_key_ = federation_key_;
}

RobertBackend::RegistrationReply RobertBackend::Register(
    const std::array<uint8_t, 32>& phone_public) {
  uint64_t id = 0;
  do {
    id = world_->rng().NextUint64() & 0xffffffffffULL;  // 40-bit identifier
  } while (id == 0 || id_table_.count(id) > 0);

  auto shared = crypto::DhShared(dh_keys_.secret, phone_public);
  PhoneEntry entry;
  crypto::DeriveChannelKeys(shared, &entry.enc, &entry.auth);
  id_table_[id] = entry;
  return {id, dh_keys_.public_key};
}

Result<PreHelloMessage, RobertError> RobertBackend::ProvisionEbids(
    uint64_t id, int64_t epoch_begin, int64_t epoch_end) {
  if (id_table_.count(id) == 0) return RobertError::kUnknownId;
  PreHelloMessage msg;
  msg.id = id;
  for (int64_t epoch = epoch_begin; epoch < epoch_end; ++epoch) {
    EbidEntry entry;
    entry.epoch = epoch;
    entry.ebid = MintEbid(server_key_, epoch, id);
    entry.ecc = MintEcc(federation_key_, entry.ebid, country_code_);
    msg.entries.push_back(entry);
  }
  last_pre_hello_[id] = msg;
  return msg;
}

const PreHelloMessage* RobertBackend::LastPreHelloFor(uint64_t id) const {
  auto it = last_pre_hello_.find(id);
  return it == last_pre_hello_.end() ? nullptr : &it->second;
}

Bytes QrTagInputFor(const QrCode& qr, bool bind_window) {
  Bytes input = qr.token;
  input.push_back(qr.kind == QrKind::kLong ? 1 : 2);
  uint8_t buf[4];
  PutBe32(static_cast<uint32_t>(qr.start_day), buf);
  input.insert(input.end(), buf, buf + 4);
  if (bind_window) {
    PutBe32(static_cast<uint32_t>(qr.window_start_day), buf);
    input.insert(input.end(), buf, buf + 4);
    PutBe32(static_cast<uint32_t>(qr.window_end_day), buf);
    input.insert(input.end(), buf, buf + 4);
  }
  return input;
}

UploadMessage MakeUploadMessage(const QrCode& qr,
                                const std::vector<ReceivedRecord>& records,
                                int64_t window_start_day,
                                int64_t window_end_day) {
  UploadMessage msg;
  msg.qr = qr;
  msg.window_start_day = window_start_day;
  msg.window_end_day = window_end_day;
  for (const auto& r : records) {
    msg.records.push_back({r.hello.Serialize(), r.reception_tick});
  }
  return msg;
}

Bytes RobertBackend::QrTagInput(const QrCode& qr) const {
  return QrTagInputFor(qr, world_->config().robert_bind_window_to_token);
}

QrCode RobertBackend::IssueQr(QrKind kind, int64_t start_day,
                              int64_t window_start_day,
                              int64_t window_end_day) {
  QrCode qr;
  qr.token = world_->rng().NextBytes(16);
  qr.kind = kind;
  qr.start_day = start_day;
  qr.issue_tick = world_->now();
  qr.country_code = country_code_;
  qr.window_start_day = window_start_day;
  qr.window_end_day = window_end_day;
  qr.tag = crypto::Mac40(qr_mint_key_, QrTagInput(qr));
  qr_issued_.push_back(qr);
  return qr;
}

std::vector<QrCode> RobertBackend::IssueSheet(int64_t first_day) {
  std::vector<QrCode> sheet;
  for (int64_t d = first_day; d < first_day + world_->config().robert_sheet_days;
       ++d) {
    sheet.push_back(IssueQr(QrKind::kLong, d, d, d));
  }
  return sheet;
}

bool RobertBackend::QrTagValid(const QrCode& qr) const {
  return crypto::Verify40(qr_mint_key_, QrTagInput(qr), qr.tag);
}

Result<Unit, RecordError> RobertBackend::ProcessRecordLocal(
    const HelloMsg& hello, Tick claimed_reception,
    std::optional<uint64_t> uploader_registered_id) {
  // (5) decrypt and parse the EBID
  crypto::Block64 plain = crypto::Prp64Decrypt(server_key_, hello.ebid);
  uint32_t epoch24 = 0;
  uint64_t id = 0;
  crypto::UnpackEpochId(plain, &epoch24, &id);

  // (6) the identifier must belong to a registered phone
  auto entry = id_table_.find(id);
  if (entry == id_table_.end()) return RecordError::kUnknownEmitter;

  // (7) the EBID's epoch must match the claimed reception time
  auto claimed_epoch = EpochOf(claimed_reception, alignment_, world_->config().time);
  if (!claimed_epoch.ok() ||
      claimed_epoch.value().index != static_cast<int64_t>(epoch24)) {
    return RecordError::kEpochMismatch;
  }

  // (8)+(9) validate the MAC under the emitting phone's key
  if (!crypto::Verify40(entry->second.auth, hello.MacInput(), hello.mac)) {
    return RecordError::kBadMac;
  }

  if (world_->config().robert_filter_self && uploader_registered_id &&
      *uploader_registered_id == id) {
    return RecordError::kSelfFiltered;
  }

  lee_[id].insert(static_cast<int64_t>(epoch24));
  return Unit{};
}

UploadOutcome RobertBackend::ProcessUpload(
    const UploadMessage& upload, const std::string& uploader_name,
    std::optional<uint64_t> uploader_registered_id) {
  UploadOutcome outcome;

  // (1) validate the token
  const QrCode& qr = upload.qr;
  if (qr.country_code != country_code_ || !QrTagValid(qr)) {
    outcome.batch_error = BatchError::kInvalidToken;
    return outcome;
  }
  if (used_tokens_.count(qr.token) > 0) {
    outcome.batch_error = BatchError::kTokenReused;
    return outcome;
  }
  const SimConfig& cfg = world_->config();
  if (qr.kind == QrKind::kLong) {
    int64_t today = world_->current_day().index;
    if (today < qr.start_day ||
        today >= qr.start_day + cfg.robert_long_validity_days) {
      outcome.batch_error = BatchError::kTokenExpired;
      return outcome;
    }
  } else {
    int64_t age_s = world_->now().seconds() - qr.issue_tick.seconds();
    if (age_s >= cfg.robert_short_validity_min * 60) {
      outcome.batch_error = BatchError::kTokenExpired;
      return outcome;
    }
  }
  used_tokens_.insert(qr.token);

  for (size_t i = 0; i < upload.records.size(); ++i) {
    const UploadRecord& record = upload.records[i];
    if (cfg.robert_batch_limit > 0 &&
        static_cast<int64_t>(outcome.accepted) >= cfg.robert_batch_limit) {
      outcome.rejected.emplace_back(i, RecordError::kBatchLimit);
      continue;
    }

    // (2) parse the ephemeral
    HelloMsg hello;
    if (!HelloMsg::Parse(record.hello_bytes, &hello)) {
      outcome.rejected.emplace_back(i, RecordError::kMalformed);
      continue;
    }

    // (3) 16-bit timestamp vs. claimed reception time
    if (T16Distance(hello.t16,
                    TruncatedTimestamp16(record.claimed_reception_tick)) >
        cfg.robert_hello_tolerance_s) {
      outcome.rejected.emplace_back(i, RecordError::kStaleTimestamp);
      continue;
    }

    // Mitigation: reject records outside the token-bound contagious window.
    if (cfg.robert_bind_window_to_token) {
      auto claimed_epoch =
          EpochOf(record.claimed_reception_tick, alignment_, cfg.time);
      if (!claimed_epoch.ok()) {
        outcome.rejected.emplace_back(i, RecordError::kWindowViolation);
        continue;
      }
      int64_t claimed_day =
          DayOfEpoch(claimed_epoch.value(), alignment_, cfg.time).index;
      if (claimed_day < qr.window_start_day || claimed_day > qr.window_end_day) {
        outcome.rejected.emplace_back(i, RecordError::kWindowViolation);
        continue;
      }
    }

    // (4) decrypt the country code, forwarding foreign records
    uint8_t cc = MintEcc(federation_key_, hello.ebid, hello.ecc);
    RobertBackend* owner = nullptr;
    if (cc == country_code_) {
      owner = this;
    } else {
      auto peer = peers_.find(cc);
      if (peer == peers_.end()) {
        outcome.rejected.emplace_back(i, RecordError::kUnknownCountry);
        continue;
      }
      owner = peer->second;
    }

    auto result = owner->ProcessRecordLocal(hello, record.claimed_reception_tick,
                                            owner == this
                                                ? uploader_registered_id
                                                : std::nullopt);
    if (result.ok()) {
      ++outcome.accepted;
    } else {
      outcome.rejected.emplace_back(i, result.error());
    }
  }

  world_->EmitUploadAccepted(uploader_name, crypto::DigestHex(qr.token),
                             outcome.accepted, country_name_);
  world_->EmitMarkPositive(uploader_name);
  return outcome;
}

Result<StatusResponse, StatusError> RobertBackend::ProcessStatusRequest(
    const HelloMsg& request) {
  const SimConfig& cfg = world_->config();
  // Request authentication reuses steps (1)-(8) of upload processing plus
  // the MAC check, with "claimed reception" being the current time.
  if (T16Distance(request.t16, TruncatedTimestamp16(world_->now())) >
      cfg.robert_hello_tolerance_s) {
    return StatusError::kStaleTimestamp;
  }
  uint8_t cc = MintEcc(federation_key_, request.ebid, request.ecc);
  if (cc != country_code_) return StatusError::kUnknownCountry;

  crypto::Block64 plain = crypto::Prp64Decrypt(server_key_, request.ebid);
  uint32_t epoch24 = 0;
  uint64_t id = 0;
  crypto::UnpackEpochId(plain, &epoch24, &id);
  auto entry = id_table_.find(id);
  if (entry == id_table_.end()) return StatusError::kUnknownEmitter;

  auto now_epoch = EpochOf(world_->now(), alignment_, cfg.time);
  if (!now_epoch.ok() ||
      now_epoch.value().index != static_cast<int64_t>(epoch24)) {
    return StatusError::kEpochMismatch;
  }
  if (!crypto::Verify40(entry->second.auth, request.MacInput(), request.mac)) {
    return StatusError::kBadMac;
  }

  StatusResponse response;
  auto lee = lee_.find(id);
  if (lee != lee_.end() && !lee->second.empty() && notified_.count(id) == 0) {
    // A phone is notified that it is at risk at most once.
    notified_.insert(id);
    response.at_risk = true;
    response.exposed_epochs.assign(lee->second.begin(), lee->second.end());
  }
  return response;
}

RobertPhone::RobertPhone(World* world, std::string name, std::string country)
    : world_(world), name_(std::move(name)), country_(std::move(country)) {}

Result<Unit, RobertError> RobertPhone::Register(RobertBackend* backend) {
  if (registered_) return RobertError::kAlreadyRegistered;
  backend_ = backend;
  dh_keys_ = crypto::DhGenerate(world_->rng());
  auto reply = backend->Register(dh_keys_.public_key);
  id_ = reply.id;
  auto shared = crypto::DhShared(dh_keys_.secret, reply.server_public);
  crypto::DeriveChannelKeys(shared, &enc_key_, &auth_key_);
  registered_ = true;
  world_->EmitPhoneInit(name_, country_);
  return Unit{};
}

void RobertPhone::InstallPreHello(const PreHelloMessage& msg) {
  for (const auto& entry : msg.entries) schedule_[entry.epoch] = entry;
}

Result<HelloMsg, RobertError> RobertPhone::BuildHelloForTick(Tick tick) const {
  if (!registered_) return RobertError::kScheduleGap;
  auto epoch = EpochOf(tick, backend_->alignment(), world_->config().time);
  if (!epoch.ok()) return RobertError::kScheduleGap;
  auto entry = schedule_.find(epoch.value().index);
  if (entry == schedule_.end()) return RobertError::kScheduleGap;
  return MakeHello(entry->second.ecc, entry->second.ebid,
                   TruncatedTimestamp16(tick), auth_key_);
}

Result<Unit, RobertError> RobertPhone::BroadcastHello(const std::string& place) {
  auto hello = BuildHelloForTick(world_->now());
  if (!hello.ok()) return hello.error();
  auto written = world_->BleWrite(name_, place, hello.value().Serialize());
  if (!written.ok()) return RobertError::kNotPresent;
  return Unit{};
}

Result<Unit, WorldError> RobertPhone::ScanAndStore(const std::string& place) {
  auto msgs = world_->BleRead(name_, place);
  if (!msgs.ok()) return msgs.error();
  for (const auto& m : msgs.value()) {
    HelloMsg hello;
    if (!HelloMsg::Parse(m, &hello)) continue;
    // Reject payloads whose truncated timestamp is outside the tolerance.
    if (T16Distance(hello.t16, TruncatedTimestamp16(world_->now())) >
        world_->config().robert_hello_tolerance_s) {
      continue;
    }
    received_.push_back({hello, world_->now()});
  }
  return Unit{};
}

std::vector<ReceivedRecord> RobertPhone::RecordsInWindow(
    int64_t window_start_day, int64_t window_end_day) const {
  std::vector<ReceivedRecord> out;
  for (const auto& r : received_) {
    int64_t day = UnixDayOf(r.reception_tick, world_->config().time).index;
    if (day >= window_start_day && day <= window_end_day) out.push_back(r);
  }
  return out;
}

UploadMessage RobertPhone::BuildUpload(const QrCode& qr,
                                       const std::vector<ReceivedRecord>& records,
                                       int64_t window_start_day,
                                       int64_t window_end_day) const {
  return MakeUploadMessage(qr, records, window_start_day, window_end_day);
}

Result<bool, StatusError> RobertPhone::RequestStatus() {
  auto hello = BuildHelloForTick(world_->now());
  if (!hello.ok()) return StatusError::kMalformed;
  auto response = backend_->ProcessStatusRequest(hello.value());
  if (!response.ok()) return response.error();
  if (response.value().at_risk) {
    const auto& align = backend_->alignment();
    const auto& time = world_->config().time;
    for (int64_t epoch : response.value().exposed_epochs) {
      DayStamp day = DayOfEpoch({epoch}, align, time);
      EpochStamp inst = ToUnixEpoch({epoch}, align, time);
      world_->EmitPClaimAtRisk(name_, day, inst);
    }
    risk_flag_ = true;
  }
  return response.value().at_risk;
}

void RobertPhone::AcceptRiskNotification(DayStamp day_close,
                                         EpochStamp inst_close) {
  world_->EmitPClaimAtRisk(name_, day_close, inst_close);
  risk_flag_ = true;
}

QrCode RobertHealthAuthority::Diagnose(const std::string& phone_name,
                                       int64_t window_start_day,
                                       int64_t window_end_day, QrKind kind) {
  DayStamp test_day = world_->current_day();
  world_->EmitHAClaimInfected(phone_name, {window_start_day},
                              {window_end_day});
  world_->EmitTestPositive(phone_name, test_day);
  return backend_->IssueQr(kind, test_day.index, window_start_day,
                           window_end_day);
}

}  // namespace enslab::robert
