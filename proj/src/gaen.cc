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

#include "enslab/gaen.h"

#include <algorithm>
#include <cstring>

namespace enslab::gaen {

namespace {

crypto::Block128 EpochBlock(int64_t epoch_index) {
  crypto::Block128 block{};
  PutBe32(static_cast<uint32_t>(epoch_index), block.data() + 12);
  return block;
}

}  // namespace

crypto::Key128 RpikFor(const Tek& tek) {
  return crypto::Kdf(crypto::View(tek.key), kRpikLabel);
}

crypto::Key128 AemkFor(const Tek& tek) {
  return crypto::Kdf(crypto::View(tek.key), kAemkLabel);
}

crypto::Block128 RpiFromRpik(const crypto::Key128& rpik, int64_t epoch_index) {
  return crypto::Block128Encrypt(rpik, EpochBlock(epoch_index));
}

crypto::Block128 RpiFor(const Tek& tek, int64_t epoch_index) {
  return RpiFromRpik(RpikFor(tek), epoch_index);
}

crypto::Block128 AemFor(const Tek& tek, int64_t epoch_index, uint8_t version,
                        uint8_t tx_power) {
  crypto::Block128 block = EpochBlock(epoch_index);
  block[0] = version;
  block[1] = tx_power;
  return crypto::Block128Encrypt(AemkFor(tek), block);
}

Bytes BroadcastPayload(const Tek& tek, int64_t epoch_index, uint8_t version,
                       uint8_t tx_power) {
  crypto::Block128 rpi = RpiFor(tek, epoch_index);
  crypto::Block128 aem = AemFor(tek, epoch_index, version, tx_power);
  Bytes out(rpi.begin(), rpi.end());
  out.insert(out.end(), aem.begin(), aem.end());
  return out;
}

bool ParsePayload(ByteView payload, crypto::Block128* rpi) {
  if (payload.size() != 32) return false;
  std::memcpy(rpi->data(), payload.data(), 16);
  return true;
}

Bytes ReleasedKeyMessage(ByteView tek, int64_t day) {
  Bytes msg(tek.begin(), tek.end());
  uint8_t d[4];
  PutBe32(static_cast<uint32_t>(day), d);
  msg.insert(msg.end(), d, d + 4);
  return msg;
}

std::vector<Exposure> Match(const ObservationDb& observations,
                            std::span<const ReleasedKey> released,
                            MatchMode mode, int64_t skew_epochs,
                            const TimeConfig& time) {
  std::vector<Exposure> exposures;
  for (const auto& key : released) {
    if (key.tek.size() != 16) continue;
    Tek tek;
    std::memcpy(tek.key.data(), key.tek.data(), 16);
    tek.day = key.day;
    crypto::Key128 rpik = RpikFor(tek);

    int64_t first_epoch = key.day * time.epochs_per_day;
    std::map<crypto::Block128, int64_t> day_rpis;
    for (int64_t j = first_epoch; j < first_epoch + time.epochs_per_day; ++j) {
      day_rpis[RpiFromRpik(rpik, j)] = j;
    }

    for (const auto& obs : observations.entries) {
      auto it = day_rpis.find(obs.rpi);
      if (it == day_rpis.end()) continue;
      int64_t j = it->second;
      bool accept = false;
      switch (mode) {
        case MatchMode::kCwa:
          accept = std::llabs(obs.epoch - j) <= skew_epochs;
          break;
        case MatchMode::kDp3t:
          accept = obs.epoch / time.epochs_per_day == key.day;
          break;
      }
      if (!accept) continue;
      Exposure e;
      e.tek_digest = crypto::DigestHex(key.tek);
      e.key_day = key.day;
      e.key_epoch = j;
      e.observed_epoch = obs.epoch;
      e.place = obs.place;
      exposures.push_back(std::move(e));
    }
  }
  return exposures;
}

GaenPhone::GaenPhone(World* world, std::string name, std::string country)
    : world_(world), name_(std::move(name)), country_(std::move(country)) {
  world_->EmitPhoneInit(name_, country_);
}

Result<Tek, GaenError> GaenPhone::NewTek() {
  int64_t today = world_->current_day().index;
  if (teks_.count(today) > 0) return GaenError::kOneTekPerDay;
  Tek tek;
  tek.key = world_->rng().NextArray<16>();
  tek.day = today;
  teks_[today] = tek;
  world_->EmitCreateKey(name_, {today}, crypto::DigestHex(crypto::View(tek.key)));
  // Keys older than 14 days are deleted.
  std::erase_if(teks_, [&](const auto& kv) { return today - kv.first > 14; });
  return tek;
}

Tek GaenPhone::ForceExtraTek() {
  int64_t today = world_->current_day().index;
  Tek tek;
  tek.key = world_->rng().NextArray<16>();
  tek.day = today;
  world_->EmitCreateKey(name_, {today}, crypto::DigestHex(crypto::View(tek.key)));
  return tek;
}

Result<Unit, WorldError> GaenPhone::Broadcast(const std::string& place) {
  int64_t today = world_->current_day().index;
  auto it = teks_.find(today);
  if (it == teks_.end()) {
    NewTek();
    it = teks_.find(today);
  }
  Bytes payload = BroadcastPayload(it->second, world_->current_epoch().index,
                                   aem_version_, tx_power_);
  return world_->BleWrite(name_, place, payload);
}

Result<Unit, WorldError> GaenPhone::Scan(const std::string& place) {
  auto msgs = world_->BleRead(name_, place);
  if (!msgs.ok()) return msgs.error();
  for (const auto& m : msgs.value()) {
    crypto::Block128 rpi;
    if (!ParsePayload(m, &rpi)) continue;
    observations_.entries.push_back(
        {rpi, world_->current_epoch().index, place});
  }
  return Unit{};
}

std::vector<Exposure> GaenPhone::RunMatching(
    std::span<const ReleasedKey> released,
    const std::array<uint8_t, 32>& operator_public_key, MatchMode mode,
    int64_t skew_epochs) {
  std::vector<ReleasedKey> verified;
  for (const auto& key : released) {
    Bytes msg = ReleasedKeyMessage(key.tek, key.day);
    if (crypto::Verify(operator_public_key, msg, key.signature)) {
      verified.push_back(key);
    }
  }
  std::vector<Exposure> all = Match(observations_, verified, mode, skew_epochs,
                                    world_->config().time);
  std::vector<Exposure> fresh;
  for (const auto& e : all) {
    auto mark = std::make_pair(e.tek_digest, e.observed_epoch);
    if (claimed_.count(mark) > 0) continue;
    claimed_.insert(mark);
    DayStamp day_close{e.observed_epoch / world_->config().time.epochs_per_day};
    world_->EmitPClaimAtRisk(name_, day_close, {e.observed_epoch});
    ++claim_count_;
    fresh.push_back(e);
  }
  return fresh;
}

}  // namespace enslab::gaen
