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
#include "enslab/dp3t.h"

using namespace enslab;
using namespace enslab::dp3t;

namespace {

struct Fixture {
  World w{SimConfig{}, 42};
  Dp3tHealthAuthority ha{&w, "DE"};
  Dp3tBackend backend{&w, "DE", ha.public_key()};

  void AtDay(int64_t day, int64_t second_of_day = 2000) {
    w.AdvanceToDayTime(day, second_of_day);
  }
};

}  // namespace

TEST_CASE("commitments are pairwise distinct and blinded") {
  Fixture f;
  Dp3tPhone phone(&f.w, "P", "DE");
  for (int day = 0; day < 3; ++day) {
    REQUIRE(phone.NewTek().ok());
    if (day < 2) f.w.AdvanceSeconds(86400);
  }
  auto hs = phone.CommitKeys(&f.ha, {0, 1, 2});
  REQUIRE(hs.ok());
  std::set<crypto::Digest256> distinct(hs.value().begin(), hs.value().end());
  CHECK(distinct.size() == 3);

  // The same key with a different blinding nonce commits differently.
  gaen::Tek tek = phone.test_db()[0].tek;
  Bytes r1 = f.w.rng().NextBytes(16);
  Bytes r2 = f.w.rng().NextBytes(16);
  CHECK(CommitmentHash(tek, 0, r1) != CommitmentHash(tek, 0, r2));
}

TEST_CASE("at most fourteen keys can be committed") {
  Fixture f;
  Dp3tPhone phone(&f.w, "P", "DE");
  std::vector<int64_t> days;
  for (int day = 0; day <= 14; ++day) {
    REQUIRE(phone.NewTek().ok());
    days.push_back(day);
    if (day < 14) f.w.AdvanceSeconds(86400);
  }
  std::vector<int64_t> fourteen(days.begin(), days.begin() + 14);
  CHECK(phone.CommitKeys(&f.ha, fourteen).ok());

  auto fifteen = phone.CommitKeys(&f.ha, days);
  REQUIRE(!fifteen.ok());
  CHECK(fifteen.error() == Dp3tError::kTooManyKeys);
}

TEST_CASE("diagnosis signs each pending commitment") {
  Fixture f;
  Dp3tPhone phone(&f.w, "P", "DE");
  REQUIRE(phone.NewTek().ok());
  f.AtDay(1);
  REQUIRE(phone.NewTek().ok());
  REQUIRE(phone.CommitKeys(&f.ha, {0, 1}).ok());
  f.AtDay(2);
  auto acs = f.ha.DiagnoseAndSign("P", 0, 2);
  REQUIRE(acs.ok());
  REQUIRE(acs.value().size() == 2);
  for (const auto& ac : acs.value()) {
    Bytes msg = AuthCodeMessage(ac.h, ac.issue_day);
    CHECK(crypto::Verify(f.ha.public_key(), msg, ac.signature));
    // Another country's HA key does not verify it.
    Dp3tHealthAuthority other(&f.w, "FR");
    CHECK(!crypto::Verify(other.public_key(), msg, ac.signature));
  }

  auto denied = f.ha.DiagnoseAndSign("P", 0, 2, /*positive=*/false);
  REQUIRE(!denied.ok());
  CHECK(denied.error() == Dp3tError::kNoAuthorisation);
}

TEST_CASE("upload verifies commitment, signature and recency") {
  Fixture f;
  Dp3tPhone phone(&f.w, "P", "DE");
  REQUIRE(phone.NewTek().ok());
  f.AtDay(1);
  REQUIRE(phone.CommitKeys(&f.ha, {0}).ok());
  f.AtDay(2);
  auto acs = f.ha.DiagnoseAndSign("P", 0, 2);
  REQUIRE(acs.ok());

  const TestDbEntry& entry = phone.test_db()[0];
  UploadTuple tuple;
  tuple.tek = crypto::ToVec(entry.tek.key);
  tuple.start_epoch = entry.start_epoch;
  tuple.blind = entry.blind;
  tuple.ac = acs.value()[0];

  SUBCASE("honest tuple accepted, key released") {
    CHECK(f.backend.ProcessUpload(tuple).ok());
    bool released = false;
    for (const auto& e : f.w.trace().events()) {
      if (e.kind == EventKind::kKeyReleased) released = true;
    }
    CHECK(released);
  }

  SUBCASE("a different key under the same code is a commitment mismatch") {
    tuple.tek = f.w.rng().NextBytes(16);
    auto res = f.backend.ProcessUpload(tuple);
    REQUIRE(!res.ok());
    CHECK(res.error() == Dp3tError::kCommitmentMismatch);
  }

  SUBCASE("tampered signature is rejected") {
    tuple.ac.signature[0] ^= 1;
    auto res = f.backend.ProcessUpload(tuple);
    REQUIRE(!res.ok());
    CHECK(res.error() == Dp3tError::kBadSignature);
  }

  SUBCASE("codes older than the freshness window are stale") {
    f.AtDay(5);  // issue day 2 + freshness 2 < day 5
    auto res = f.backend.ProcessUpload(tuple);
    REQUIRE(!res.ok());
    CHECK(res.error() == Dp3tError::kStaleCode);
  }
}

TEST_CASE("upload deletes the phone's cryptographic material") {
  Fixture f;
  Dp3tPhone phone(&f.w, "P", "DE");
  REQUIRE(phone.NewTek().ok());
  f.AtDay(1);
  REQUIRE(phone.CommitKeys(&f.ha, {0}).ok());
  f.AtDay(2);
  auto acs = f.ha.DiagnoseAndSign("P", 0, 2);
  phone.StoreAuthCodes(acs.value());
  auto results = phone.UploadKeys(&f.backend);
  REQUIRE(results.size() == 1);
  CHECK(results[0].ok());
  CHECK(phone.teks().empty());
  CHECK(phone.test_db().empty());
}

TEST_CASE("substituted test-db entries upload another phone's key") {
  // The key owner and the uploader are both compromised before testing.
  Fixture f;
  Dp3tPhone owner(&f.w, "W", "DE");
  Dp3tPhone uploader(&f.w, "V", "DE");
  REQUIRE(owner.NewTek().ok());

  TestDbEntry entry;
  entry.tek = owner.TekForDay(0);
  entry.start_epoch = 0;
  entry.blind = f.w.rng().NextBytes(16);
  uploader.mutable_test_db()->push_back(entry);

  f.AtDay(1);
  REQUIRE(uploader.CommitStoredDb(&f.ha).ok());
  f.AtDay(2);
  auto acs = f.ha.DiagnoseAndSign("V", 0, 2);
  uploader.StoreAuthCodes(acs.value());
  auto results = uploader.UploadKeys(&f.backend);
  REQUIRE(results.size() == 1);
  CHECK(results[0].ok());

  std::string owner_key_digest =
      crypto::DigestHex(crypto::View(entry.tek.key));
  bool released = false;
  for (const auto& e : f.w.trace().events()) {
    if (e.kind == EventKind::kKeyReleased && e.digest == owner_key_digest) {
      released = true;
    }
  }
  CHECK(released);
}

TEST_CASE("phones fetch keys for home and declared visited regions") {
  World w(SimConfig{}, 42);
  Dp3tHealthAuthority ha_de(&w, "DE");
  Dp3tHealthAuthority ha_fr(&w, "FR");
  Dp3tBackend de(&w, "DE", ha_de.public_key());
  Dp3tBackend fr(&w, "FR", ha_fr.public_key());
  de.ConnectPeer(&fr);

  // One released key per country, already past its release time.
  auto release = [&](Dp3tBackend& backend, Dp3tHealthAuthority& ha,
                     const char* phone_name) {
    Dp3tPhone phone(&w, phone_name, backend.country());
    phone.NewTek();
    phone.CommitKeys(&ha, {w.current_day().index});
    auto acs = ha.DiagnoseAndSign(phone_name, 0, 2);
    phone.StoreAuthCodes(acs.value());
    phone.UploadKeys(&backend);
  };
  release(de, ha_de, "PD");
  release(fr, ha_fr, "PF");
  w.AdvanceToDayTime(1, 2000);  // past end-of-day release for day 0

  CHECK(de.FetchForPhone("R").size() == 1);  // home keys only
  de.DeclareVisited("R", {"FR"});
  CHECK(de.FetchForPhone("R").size() == 2);  // home + visited
  de.DeclareVisited("R", {"FR", "XX"});      // unknown region ignored
  CHECK(de.FetchForPhone("R").size() == 2);
}

TEST_CASE("keys are withheld until the end of their day when configured") {
  Fixture f;  // dp3t.release_at_day_end defaults to true
  Dp3tPhone phone(&f.w, "P", "DE");
  REQUIRE(phone.NewTek().ok());
  f.w.AdvanceToDayTime(0, 5000);
  REQUIRE(phone.CommitKeys(&f.ha, {0}).ok());
  auto acs = f.ha.DiagnoseAndSign("P", 0, 2);
  phone.StoreAuthCodes(acs.value());
  phone.UploadKeys(&f.backend);

  CHECK(f.backend.OwnReleasedKeys().empty());  // same day: not yet served
  f.w.AdvanceToDayTime(1, 100);
  CHECK(f.backend.OwnReleasedKeys().size() == 1);
}

TEST_CASE("immediate release opens the replay window when configured off") {
  SimConfig config;
  config.dp3t_release_at_day_end = false;
  World w(config, 42);
  Dp3tHealthAuthority ha(&w, "DE");
  Dp3tBackend backend(&w, "DE", ha.public_key());
  Dp3tPhone phone(&w, "P", "DE");
  REQUIRE(phone.NewTek().ok());
  w.AdvanceToDayTime(0, 5000);
  REQUIRE(phone.CommitKeys(&ha, {0}).ok());
  auto acs = ha.DiagnoseAndSign("P", 0, 2);
  phone.StoreAuthCodes(acs.value());
  phone.UploadKeys(&backend);
  CHECK(backend.OwnReleasedKeys().size() == 1);  // served the same day
}
