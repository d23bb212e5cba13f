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

#include "enslab/dp3t.h"

#include <cstring>

namespace enslab::dp3t {

crypto::Digest256 CommitmentHash(const gaen::Tek& tek, int64_t start_epoch,
                                 ByteView blind) {
  Bytes input(tek.key.begin(), tek.key.end());
  uint8_t t[4];
  PutBe32(static_cast<uint32_t>(start_epoch), t);
  input.insert(input.end(), t, t + 4);
  input.insert(input.end(), blind.begin(), blind.end());
  return crypto::Sha256(input);
}

Bytes AuthCodeMessage(const crypto::Digest256& h, int64_t issue_day) {
  Bytes msg(h.begin(), h.end());
  uint8_t d[4];
  PutBe32(static_cast<uint32_t>(issue_day), d);
  msg.insert(msg.end(), d, d + 4);
  return msg;
}

Dp3tHealthAuthority::Dp3tHealthAuthority(World* world, std::string country)
    : world_(world), country_(std::move(country)) {
  sig_keys_ = crypto::SigGenerate(world_->rng());
}

Result<Unit, Dp3tError> Dp3tHealthAuthority::ReceiveCommitments(
    const std::string& phone_name, const std::vector<crypto::Digest256>& hs) {
  if (static_cast<int64_t>(hs.size()) >
      world_->config().dp3t_max_committed_keys) {
    return Dp3tError::kTooManyKeys;
  }
  pending_[phone_name] = hs;
  return Unit{};
}

Result<std::vector<AuthCode>, Dp3tError> Dp3tHealthAuthority::DiagnoseAndSign(
    const std::string& phone_name, int64_t window_start_day,
    int64_t window_end_day, bool positive) {
  if (!positive) return Dp3tError::kNoAuthorisation;
  world_->EmitHAClaimInfected(phone_name, {window_start_day},
                              {window_end_day});
  world_->EmitTestPositive(phone_name, world_->current_day());
  int64_t issue_day = world_->current_day().index;
  std::vector<AuthCode> acs;
  for (const auto& h : pending_[phone_name]) {
    AuthCode ac;
    ac.h = h;
    ac.issue_day = issue_day;
    ac.signature = crypto::Sign(sig_keys_, AuthCodeMessage(h, issue_day));
    acs.push_back(std::move(ac));
  }
  return acs;
}

Dp3tBackend::Dp3tBackend(World* world, std::string country,
                         const std::array<uint8_t, 32>& ha_public_key)
    : world_(world),
      country_(std::move(country)),
      ha_public_key_(ha_public_key) {
  sig_keys_ = crypto::SigGenerate(world_->rng());
}

void Dp3tBackend::ConnectPeer(Dp3tBackend* peer) {
  peers_[peer->country()] = peer;
  peer->peers_[country_] = this;
}

void Dp3tBackend::DeclareVisited(const std::string& phone_name,
                                 const std::set<std::string>& regions) {
  visited_[phone_name] = regions;
}

Result<Unit, Dp3tError> Dp3tBackend::ProcessUpload(const UploadTuple& upload) {
  if (upload.tek.size() != 16) return Dp3tError::kCommitmentMismatch;
  gaen::Tek tek;
  std::memcpy(tek.key.data(), upload.tek.data(), 16);
  crypto::Digest256 h =
      CommitmentHash(tek, upload.start_epoch, upload.blind);
  // The uploaded key must be the committed one.
  if (h != upload.ac.h) return Dp3tError::kCommitmentMismatch;
  if (!crypto::Verify(ha_public_key_,
                      AuthCodeMessage(upload.ac.h, upload.ac.issue_day),
                      upload.ac.signature)) {
    return Dp3tError::kBadSignature;
  }
  int64_t today = world_->current_day().index;
  if (today - upload.ac.issue_day > world_->config().dp3t_ac_freshness_days ||
      upload.ac.issue_day > today) {
    return Dp3tError::kStaleCode;
  }

  int64_t day = upload.start_epoch / world_->config().time.epochs_per_day;
  Row row;
  row.tek = upload.tek;
  row.day = day;
  row.release_after_s = world_->config().dp3t_release_at_day_end
                            ? (day + 1) * world_->config().time.day_length_s()
                            : world_->now().seconds();
  rows_.push_back(row);
  world_->EmitKeyReleased(crypto::DigestHex(upload.tek), {day}, country_);
  return Unit{};
}

std::vector<gaen::ReleasedKey> Dp3tBackend::OwnReleasedKeys() const {
  std::vector<gaen::ReleasedKey> out;
  for (const auto& row : rows_) {
    if (world_->now().seconds() < row.release_after_s) continue;
    gaen::ReleasedKey key;
    key.tek = row.tek;
    key.day = row.day;
    key.country = country_;
    key.signature = crypto::Sign(
        sig_keys_, gaen::ReleasedKeyMessage(row.tek, row.day));
    out.push_back(std::move(key));
  }
  return out;
}

std::vector<gaen::ReleasedKey> Dp3tBackend::FetchForPhone(
    const std::string& phone_name) const {
  std::vector<gaen::ReleasedKey> out = OwnReleasedKeys();
  auto it = visited_.find(phone_name);
  if (it != visited_.end()) {
    for (const auto& region : it->second) {
      auto peer = peers_.find(region);
      if (peer == peers_.end()) continue;  // unknown region: ignored
      auto keys = peer->second->OwnReleasedKeys();
      out.insert(out.end(), keys.begin(), keys.end());
    }
  }
  return out;
}

Result<std::vector<crypto::Digest256>, Dp3tError> Dp3tPhone::CommitKeys(
    Dp3tHealthAuthority* ha, const std::vector<int64_t>& days) {
  std::vector<crypto::Digest256> hs;
  std::vector<TestDbEntry> entries;
  for (int64_t day : days) {
    if (!HasTekForDay(day)) continue;
    TestDbEntry entry;
    entry.tek = TekForDay(day);
    entry.start_epoch = day * world_->config().time.epochs_per_day;
    entry.blind = world_->rng().NextBytes(16);
    hs.push_back(CommitmentHash(entry.tek, entry.start_epoch, entry.blind));
    entries.push_back(std::move(entry));
  }
  auto ok = ha->ReceiveCommitments(name(), hs);
  if (!ok.ok()) return ok.error();
  test_db_ = std::move(entries);
  return hs;
}

Result<std::vector<crypto::Digest256>, Dp3tError> Dp3tPhone::CommitStoredDb(
    Dp3tHealthAuthority* ha) {
  std::vector<crypto::Digest256> hs;
  for (const auto& entry : test_db_) {
    hs.push_back(CommitmentHash(entry.tek, entry.start_epoch, entry.blind));
  }
  auto ok = ha->ReceiveCommitments(name(), hs);
  if (!ok.ok()) return ok.error();
  return hs;
}

std::vector<Result<Unit, Dp3tError>> Dp3tPhone::UploadKeys(
    Dp3tBackend* backend) {
  std::vector<Result<Unit, Dp3tError>> results;
  for (const auto& entry : test_db_) {
    crypto::Digest256 h =
        CommitmentHash(entry.tek, entry.start_epoch, entry.blind);
    const AuthCode* ac = nullptr;
    for (const auto& candidate : acs_) {
      if (candidate.h == h) {
        ac = &candidate;
        break;
      }
    }
    if (ac == nullptr) {
      results.push_back(Dp3tError::kNoAuthorisation);
      continue;
    }
    UploadTuple tuple;
    tuple.tek = crypto::ToVec(entry.tek.key);
    tuple.start_epoch = entry.start_epoch;
    tuple.blind = entry.blind;
    tuple.ac = *ac;
    results.push_back(backend->ProcessUpload(tuple));
  }
  // All cryptographic material specific to the device is deleted after a
  // completed upload.
  DeleteAllKeys();
  test_db_.clear();
  acs_.clear();
  return results;
}

}  // namespace enslab::dp3t
