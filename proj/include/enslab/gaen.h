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

#ifndef ENSLAB_GAEN_H_
#define ENSLAB_GAEN_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "enslab/crypto.h"
#include "enslab/world.h"

// GAEN key schedule, broadcast payloads and on-device exposure matching,
// shared by the DP3T-style and CWA deployments.
namespace enslab::gaen {

inline constexpr char kRpikLabel[] = "ENRPIK";
inline constexpr char kAemkLabel[] = "ENAEMK";

// Daily temporary exposure key, tagged with the day it belongs to.
struct Tek {
  crypto::Key128 key{};
  int64_t day = 0;
};

crypto::Key128 RpikFor(const Tek& tek);
crypto::Key128 AemkFor(const Tek& tek);

// Rolling proximity identifier for one unix-aligned epoch: the epoch index
// sits in the low-order bits of the encrypted block.
crypto::Block128 RpiFor(const Tek& tek, int64_t epoch_index);
crypto::Block128 RpiFromRpik(const crypto::Key128& rpik, int64_t epoch_index);

// Associated encrypted metadata. Carries a version and a power byte so the
// payload has a realistic size; it is never parsed for risk.
crypto::Block128 AemFor(const Tek& tek, int64_t epoch_index, uint8_t version,
                        uint8_t tx_power);

// 32-byte broadcast payload: RPI followed by AEM.
Bytes BroadcastPayload(const Tek& tek, int64_t epoch_index, uint8_t version,
                       uint8_t tx_power);
bool ParsePayload(ByteView payload, crypto::Block128* rpi);

struct ObservationEntry {
  crypto::Block128 rpi{};
  int64_t epoch = 0;
  std::string place;
};

// Witnessed-ephemeral store. Append-only for honest phones; the
// phone-compromise capability may inject records.
struct ObservationDb {
  std::vector<ObservationEntry> entries;
};

// A key as published by a back end: signed by the releasing operator.
struct ReleasedKey {
  Bytes tek;  // 16 bytes
  int64_t day = 0;
  std::string country;
  Bytes signature;
};

Bytes ReleasedKeyMessage(ByteView tek, int64_t day);

enum class MatchMode { kCwa, kDp3t };

struct Exposure {
  std::string tek_digest;
  int64_t key_day = 0;
  int64_t key_epoch = 0;       // epoch the matched RPI was derived for
  int64_t observed_epoch = 0;  // epoch the phone recorded the RPI
  std::string place;
};

// On-device matching. CWA mode accepts |observed - key| <= skew_epochs;
// DP3T mode accepts any observation whose day equals the key's day.
std::vector<Exposure> Match(const ObservationDb& observations,
                            std::span<const ReleasedKey> released,
                            MatchMode mode, int64_t skew_epochs,
                            const TimeConfig& time);

enum class GaenError { kOneTekPerDay };

class GaenPhone {
 public:
  GaenPhone(World* world, std::string name, std::string country);

  const std::string& name() const { return name_; }
  const std::string& country() const { return country_; }

  // Generates the day's key, logs CreateKey and purges keys older than
  // 14 days. A second honest call on the same day is an error.
  Result<Tek, GaenError> NewTek();
  // Compromised phones may hold several same-day keys.
  Tek ForceExtraTek();

  const std::map<int64_t, Tek>& teks() const { return teks_; }
  bool HasTekForDay(int64_t day) const { return teks_.count(day) > 0; }
  const Tek& TekForDay(int64_t day) const { return teks_.at(day); }
  void DeleteAllKeys() { teks_.clear(); }

  Result<Unit, WorldError> Broadcast(const std::string& place);
  Result<Unit, WorldError> Scan(const std::string& place);

  const ObservationDb& observations() const { return observations_; }
  ObservationDb* mutable_observations() { return &observations_; }

  // Signature-checks the released keys against the operator key, matches
  // them against the observation store and logs PClaimAtRisk with the
  // exposure's day/epoch for every new exposure. Returns the new exposures.
  std::vector<Exposure> RunMatching(
      std::span<const ReleasedKey> released,
      const std::array<uint8_t, 32>& operator_public_key, MatchMode mode,
      int64_t skew_epochs);

  int64_t claim_count() const { return claim_count_; }

 private:
  World* world_;
  std::string name_;
  std::string country_;
  std::map<int64_t, Tek> teks_;
  ObservationDb observations_;
  std::set<std::pair<std::string, int64_t>> claimed_;
  int64_t claim_count_ = 0;
  uint8_t aem_version_ = 1;
  uint8_t tx_power_ = 0x14;
};

}  // namespace enslab::gaen

#endif  // ENSLAB_GAEN_H_
