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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "enslab/gaen.h"

using namespace enslab;
using namespace enslab::gaen;

namespace {

Tek ZeroTek(int64_t day) {
  Tek tek;
  tek.key.fill(0);
  tek.day = day;
  return tek;
}

// Brute-force matching oracle: enumerate every epoch of the key's day and
// apply the mode rule directly.
bool OracleMatches(const Tek& tek, const ObservationEntry& obs, MatchMode mode,
                   int64_t skew, const TimeConfig& time) {
  int64_t first = tek.day * time.epochs_per_day;
  for (int64_t j = first; j < first + time.epochs_per_day; ++j) {
    if (RpiFor(tek, j) != obs.rpi) continue;
    if (mode == MatchMode::kCwa) {
      if (std::llabs(obs.epoch - j) <= skew) return true;
    } else {
      if (obs.epoch / time.epochs_per_day == tek.day) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("rpi derivation is deterministic and epoch-injective") {
  Tek tek = ZeroTek(0);
  CHECK(RpiFor(tek, 42) == RpiFor(tek, 42));
  // Pinned vector computed with an independent HKDF+AES implementation.
  CHECK(ToHex(crypto::View(RpiFor(tek, 42))) ==
        "597540b5318a2dc7502488a4b21d9c33");

  std::set<crypto::Block128> rpis;
  for (int64_t j = 0; j < 144; ++j) rpis.insert(RpiFor(tek, j));
  CHECK(rpis.size() == 144);  // one distinct identifier per epoch of the day
}

TEST_CASE("payload carries rpi then aem") {
  Tek tek = ZeroTek(0);
  Bytes payload = BroadcastPayload(tek, 7, 1, 0x14);
  REQUIRE(payload.size() == 32);
  crypto::Block128 rpi;
  REQUIRE(ParsePayload(payload, &rpi));
  CHECK(rpi == RpiFor(tek, 7));
  CHECK(!ParsePayload(Bytes{1, 2, 3}, &rpi));
}

TEST_CASE("one tek per day for honest phones, several for compromised ones") {
  World w(SimConfig{}, 5);
  GaenPhone phone(&w, "P", "DE");
  REQUIRE(phone.NewTek().ok());
  auto again = phone.NewTek();
  REQUIRE(!again.ok());
  CHECK(again.error() == GaenError::kOneTekPerDay);
  // A compromised phone may hold multiple same-day keys.
  Tek extra = phone.ForceExtraTek();
  CHECK(extra.key != phone.TekForDay(0).key);

  w.AdvanceSeconds(86400);
  REQUIRE(phone.NewTek().ok());
  CHECK(phone.TekForDay(0).key != phone.TekForDay(1).key);
}

TEST_CASE("teks older than 14 days are purged") {
  World w(SimConfig{}, 5);
  GaenPhone phone(&w, "P", "DE");
  for (int day = 0; day <= 15; ++day) {
    REQUIRE(phone.NewTek().ok());
    if (day < 15) w.AdvanceSeconds(86400);
  }
  // At day 15 the day-0 key is 15 days old and gone; day 1 is exactly 14
  // days old and kept.
  CHECK(!phone.HasTekForDay(0));
  CHECK(phone.HasTekForDay(1));
  CHECK(phone.HasTekForDay(15));
}

TEST_CASE("cwa matching tolerates up to twelve epochs of skew") {
  TimeConfig time;
  Tek tek = ZeroTek(0);
  ReleasedKey key;
  key.tek = crypto::ToVec(tek.key);
  key.day = 0;
  int64_t j = 50;

  for (int64_t skew : {0, 5, 12}) {
    ObservationDb db;
    db.entries.push_back({RpiFor(tek, j), j + skew, "q"});
    CHECK(Match(db, std::span(&key, 1), MatchMode::kCwa, 12, time).size() ==
          1);
  }
  ObservationDb too_late;
  too_late.entries.push_back({RpiFor(tek, j), j + 13, "q"});
  CHECK(Match(too_late, std::span(&key, 1), MatchMode::kCwa, 12, time).empty());
  ObservationDb too_early;
  too_early.entries.push_back({RpiFor(tek, j), j - 13, "q"});
  CHECK(
      Match(too_early, std::span(&key, 1), MatchMode::kCwa, 12, time).empty());
}

TEST_CASE("dp3t matching accepts any same-day epoch, rejects the next day") {
  TimeConfig time;
  Tek tek = ZeroTek(3);
  ReleasedKey key;
  key.tek = crypto::ToVec(tek.key);
  key.day = 3;
  int64_t j = 3 * 144 + 10;

  ObservationDb replayed;
  replayed.entries.push_back({RpiFor(tek, j), j + 20, "q"});  // same day
  CHECK(Match(replayed, std::span(&key, 1), MatchMode::kDp3t, 0, time).size() ==
        1);

  ObservationDb next_day;
  next_day.entries.push_back({RpiFor(tek, j), 4 * 144 + 1, "q"});
  CHECK(
      Match(next_day, std::span(&key, 1), MatchMode::kDp3t, 0, time).empty());
}

TEST_CASE("matcher agrees with the brute-force oracle") {
  TimeConfig time;
  Rng rng(17);
  std::vector<Tek> keys;
  for (int i = 0; i < 3; ++i) {
    Tek tek;
    tek.key = rng.NextArray<16>();
    tek.day = i;
    keys.push_back(tek);
  }
  std::vector<ReleasedKey> released;
  for (const auto& tek : keys) {
    released.push_back({crypto::ToVec(tek.key), tek.day, "DE", {}});
  }

  ObservationDb db;
  for (int i = 0; i < 40; ++i) {
    ObservationEntry e;
    const Tek& tek = keys[rng.NextBounded(3)];
    int64_t j = tek.day * 144 + static_cast<int64_t>(rng.NextBounded(144));
    if (rng.NextBounded(4) == 0) {
      e.rpi = rng.NextArray<16>();  // noise, must never match
    } else {
      e.rpi = RpiFor(tek, j);
    }
    e.epoch = j + static_cast<int64_t>(rng.NextBounded(40)) - 20;
    e.place = "q";
    db.entries.push_back(e);
  }

  for (MatchMode mode : {MatchMode::kCwa, MatchMode::kDp3t}) {
    auto found = Match(db, released, mode, 12, time);
    std::set<std::pair<std::string, int64_t>> got;
    for (const auto& e : found) got.insert({e.tek_digest, e.observed_epoch});
    std::set<std::pair<std::string, int64_t>> expected;
    for (const auto& tek : keys) {
      for (const auto& obs : db.entries) {
        if (OracleMatches(tek, obs, mode, 12, time)) {
          expected.insert(
              {crypto::DigestHex(crypto::View(tek.key)), obs.epoch});
        }
      }
    }
    CHECK(got == expected);
  }
}

TEST_CASE("phone broadcast and scan exchange payloads and log events") {
  World w(SimConfig{}, 5);
  GaenPhone sender(&w, "S", "DE");
  GaenPhone receiver(&w, "R", "DE");
  w.AdvanceSeconds(30);
  w.SetPlace("S", "q");
  w.SetPlace("R", "q");
  REQUIRE(sender.Broadcast("q").ok());
  REQUIRE(receiver.Scan("q").ok());
  REQUIRE(receiver.observations().entries.size() == 1);
  CHECK(receiver.observations().entries[0].epoch == 0);

  bool create_key_logged = false;
  for (const auto& e : w.trace().events()) {
    if (e.kind == EventKind::kCreateKey && e.actor == "S") {
      create_key_logged = true;
    }
  }
  CHECK(create_key_logged);
}

TEST_CASE("matching logs one claim per new exposure and verifies signatures") {
  World w(SimConfig{}, 5);
  GaenPhone sender(&w, "S", "DE");
  GaenPhone receiver(&w, "R", "DE");
  w.AdvanceSeconds(30);
  w.SetPlace("S", "q");
  w.SetPlace("R", "q");
  sender.Broadcast("q");
  receiver.Scan("q");

  auto operator_keys = crypto::SigGenerate(w.rng());
  ReleasedKey key;
  key.tek = crypto::ToVec(sender.TekForDay(0).key);
  key.day = 0;
  key.country = "DE";
  key.signature =
      crypto::Sign(operator_keys, ReleasedKeyMessage(key.tek, key.day));

  auto exposures = receiver.RunMatching(std::span(&key, 1),
                                        operator_keys.public_key,
                                        MatchMode::kCwa, 12);
  CHECK(exposures.size() == 1);
  CHECK(receiver.claim_count() == 1);
  // Re-running does not duplicate the claim.
  CHECK(receiver
            .RunMatching(std::span(&key, 1), operator_keys.public_key,
                         MatchMode::kCwa, 12)
            .empty());

  // A bundle with a bad signature is ignored entirely.
  ReleasedKey forged = key;
  forged.signature[0] ^= 1;
  GaenPhone other(&w, "O", "DE");
  w.SetPlace("O", "q");
  other.Scan("q");
  CHECK(other
            .RunMatching(std::span(&forged, 1), operator_keys.public_key,
                         MatchMode::kCwa, 12)
            .empty());
}
