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

#include "enslab/cwa.h"

namespace enslab::cwa {

namespace {
std::string HashKey(const Bytes& value) {
  return ToHex(crypto::View(crypto::Sha256(value)));
}
}  // namespace

Result<Bytes, CwaError> VerificationServer::ScanAndRegister(const Bytes& guid) {
  std::string hg = HashKey(guid);
  if (guid_hashes_.count(hg) > 0 && world_->config().cwa_one_tan_per_token) {
    return CwaError::kGuidAlreadyUsed;
  }
  guid_hashes_.insert(hg);
  Bytes reg_token = world_->rng().NextBytes(16);
  reg_tokens_[HashKey(reg_token)] = hg;
  return reg_token;
}

void VerificationServer::SetTestResult(const Bytes& guid, TestResult result) {
  results_[HashKey(guid)] = result;
}

Result<TestResult, CwaError> VerificationServer::PollResult(
    const Bytes& reg_token) {
  auto it = reg_tokens_.find(HashKey(reg_token));
  if (it == reg_tokens_.end()) return CwaError::kUnknownToken;
  auto result = results_.find(it->second);
  return result == results_.end() ? TestResult::kPending : result->second;
}

Result<Bytes, CwaError> VerificationServer::RequestTan(const Bytes& reg_token) {
  std::string ht = HashKey(reg_token);
  auto it = reg_tokens_.find(ht);
  if (it == reg_tokens_.end()) return CwaError::kUnknownToken;
  auto result = results_.find(it->second);
  if (result == results_.end() || result->second != TestResult::kPositive) {
    return CwaError::kNotPositive;
  }
  if (world_->config().cwa_one_tan_per_token && tan_issue_counts_[ht] >= 1) {
    return CwaError::kTanAlreadyIssued;
  }
  Bytes tan = world_->rng().NextBytes(16);
  tan_hashes_.insert(HashKey(tan));
  ++tan_issue_counts_[ht];
  return tan;
}

Result<Unit, CwaError> VerificationServer::VerifyAndConsumeTan(
    const Bytes& tan) {
  std::string ht = HashKey(tan);
  if (consumed_tans_.count(ht) > 0) return CwaError::kTanReused;
  if (tan_hashes_.count(ht) == 0) return CwaError::kInvalidTan;
  tan_hashes_.erase(ht);
  consumed_tans_.insert(ht);
  return Unit{};
}

Result<int64_t, CwaError> CwaBackend::ProcessUpload(
    const std::vector<UploadedTek>& teks, const Bytes& tan,
    const std::set<std::string>& visited_countries) {
  auto tan_ok = vs_->VerifyAndConsumeTan(tan);
  if (!tan_ok.ok()) return tan_ok.error();
  int64_t accepted = 0;
  for (const auto& tek : teks) {
    if (tek.tek.size() != 16) continue;
    own_rows_.push_back(tek);
    if (hub_ != nullptr) {
      EfgsRow row;
      row.tek = tek.tek;
      row.day = tek.day;
      row.origin = country_;
      row.visited = visited_countries;
      row.visited.insert(country_);
      hub_->Sync(row);
    }
    world_->EmitKeyReleased(crypto::DigestHex(tek.tek), {tek.day}, country_);
    ++accepted;
  }
  return accepted;
}

int64_t CwaBackend::ReleaseTimeFor(int64_t key_day) const {
  // A key for day d may only reach phones once no matcher would still
  // accept it: end of day d plus the skew toleration. With the federation
  // expiry agreement each back end applies the agreed delay; without it,
  // this back end's local policy decides.
  int64_t delay_hours = world_->config().efgs_expiry_agreement
                            ? world_->config().efgs_release_delay_hours
                            : local_release_delay_hours_;
  return (key_day + 1) * world_->config().time.day_length_s() +
         delay_hours * 3600;
}

std::vector<gaen::ReleasedKey> CwaBackend::FetchKeys() const {
  std::vector<UploadedTek> rows = own_rows_;
  if (hub_ != nullptr) {
    for (const auto& row : hub_->FetchFor(country_)) {
      if (row.origin == country_) continue;  // already in own_rows_
      rows.push_back({row.tek, row.day});
    }
  }
  std::vector<gaen::ReleasedKey> out;
  for (const auto& row : rows) {
    if (world_->now().seconds() < ReleaseTimeFor(row.day)) continue;
    gaen::ReleasedKey key;
    key.tek = row.tek;
    key.day = row.day;
    key.country = country_;
    key.signature =
        crypto::Sign(sig_keys_, gaen::ReleasedKeyMessage(row.tek, row.day));
    out.push_back(std::move(key));
  }
  return out;
}

std::vector<EfgsRow> EfgsHub::FetchFor(const std::string& country) const {
  std::vector<EfgsRow> out;
  for (const auto& row : rows_) {
    if (row.origin == country || row.visited.count(country) > 0) {
      out.push_back(row);
    }
  }
  return out;
}

Result<Unit, CwaError> CwaPhone::RegisterWithVs(VerificationServer* vs) {
  auto token = vs->ScanAndRegister(guid_);
  if (!token.ok()) return token.error();
  reg_token_ = token.value();
  return Unit{};
}

Result<TestResult, CwaError> CwaPhone::Poll(VerificationServer* vs) {
  auto result = vs->PollResult(reg_token_);
  if (!result.ok()) return result.error();
  believed_result_ = result.value();
  if (believed_result_ == TestResult::kPositive) {
    world_->EmitMarkPositive(name());
  }
  return believed_result_;
}

Result<Bytes, CwaError> CwaPhone::ObtainTan(VerificationServer* vs) {
  auto tan = vs->RequestTan(reg_token_);
  if (!tan.ok()) return tan.error();
  tan_ = tan.value();
  return tan_;
}

Result<int64_t, CwaError> CwaPhone::UploadOwnTeks(
    CwaBackend* backend, const std::set<std::string>& visited_countries) {
  std::vector<UploadedTek> uploads;
  for (const auto& [day, tek] : teks()) {
    uploads.push_back({crypto::ToVec(tek.key), day});
  }
  auto result = backend->ProcessUpload(uploads, tan_, visited_countries);
  if (result.ok()) DeleteAllKeys();
  return result;
}

}  // namespace enslab::cwa
