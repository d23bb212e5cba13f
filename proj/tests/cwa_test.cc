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
#include "doctest.h"
#include "enslab/cwa.h"

using namespace enslab;
using namespace enslab::cwa;

TEST_CASE("registration stores only hashes") {
  World w(SimConfig{}, 42);
  VerificationServer vs(&w, "DE");
  Bytes guid = w.rng().NextBytes(16);
  auto token = vs.ScanAndRegister(guid);
  REQUIRE(token.ok());

  // h(guid) is present; the raw guid is not stored anywhere.
  std::string guid_hash = ToHex(crypto::View(crypto::Sha256(guid)));
  std::string guid_hex = ToHex(guid);
  CHECK(vs.guid_hashes().count(guid_hash) == 1);
  CHECK(vs.guid_hashes().count(guid_hex) == 0);
  for (const auto& [token_hash, stored_guid] : vs.reg_tokens()) {
    CHECK(token_hash != ToHex(token.value()));
    CHECK(stored_guid != guid_hex);
  }
}

TEST_CASE("replayed guid refused only with the deployed fix") {
  World w(SimConfig{}, 42);
  VerificationServer vs(&w, "DE");
  Bytes guid = w.rng().NextBytes(16);
  REQUIRE(vs.ScanAndRegister(guid).ok());
  auto replay = vs.ScanAndRegister(guid);
  REQUIRE(!replay.ok());
  CHECK(replay.error() == CwaError::kGuidAlreadyUsed);

  SimConfig flawed;
  flawed.cwa_one_tan_per_token = false;
  World w2(flawed, 42);
  VerificationServer vs2(&w2, "DE");
  Bytes guid2 = w2.rng().NextBytes(16);
  REQUIRE(vs2.ScanAndRegister(guid2).ok());
  auto second = vs2.ScanAndRegister(guid2);
  REQUIRE(second.ok());  // the original flaw's environment
}

TEST_CASE("poll relays the laboratory result") {
  World w(SimConfig{}, 42);
  VerificationServer vs(&w, "DE");
  Bytes guid = w.rng().NextBytes(16);
  auto token = vs.ScanAndRegister(guid);
  REQUIRE(token.ok());

  auto pending = vs.PollResult(token.value());
  REQUIRE(pending.ok());
  CHECK(pending.value() == TestResult::kPending);

  vs.SetTestResult(guid, TestResult::kPositive);
  auto positive = vs.PollResult(token.value());
  REQUIRE(positive.ok());
  CHECK(positive.value() == TestResult::kPositive);

  auto unknown = vs.PollResult(w.rng().NextBytes(16));
  REQUIRE(!unknown.ok());
  CHECK(unknown.error() == CwaError::kUnknownToken);
}

TEST_CASE("tan issuance requires a positive result") {
  World w(SimConfig{}, 42);
  VerificationServer vs(&w, "DE");
  Bytes guid = w.rng().NextBytes(16);
  auto token = vs.ScanAndRegister(guid);
  REQUIRE(token.ok());
  auto too_early = vs.RequestTan(token.value());
  REQUIRE(!too_early.ok());
  CHECK(too_early.error() == CwaError::kNotPositive);

  vs.SetTestResult(guid, TestResult::kPositive);
  CHECK(vs.RequestTan(token.value()).ok());
  auto second = vs.RequestTan(token.value());
  REQUIRE(!second.ok());
  CHECK(second.error() == CwaError::kTanAlreadyIssued);
}

TEST_CASE("without the fix a token yields arbitrarily many tans") {
  SimConfig flawed;
  flawed.cwa_one_tan_per_token = false;
  World w(flawed, 42);
  VerificationServer vs(&w, "DE");
  Bytes guid = w.rng().NextBytes(16);
  auto token = vs.ScanAndRegister(guid);
  REQUIRE(token.ok());
  vs.SetTestResult(guid, TestResult::kPositive);
  std::set<Bytes> tans;
  for (int i = 0; i < 5; ++i) {
    auto tan = vs.RequestTan(token.value());
    REQUIRE(tan.ok());
    tans.insert(tan.value());
  }
  CHECK(tans.size() == 5);
}

TEST_CASE("tans are single use and unknown tans are rejected") {
  World w(SimConfig{}, 42);
  VerificationServer vs(&w, "DE");
  Bytes guid = w.rng().NextBytes(16);
  auto token = vs.ScanAndRegister(guid);
  vs.SetTestResult(guid, TestResult::kPositive);
  auto tan = vs.RequestTan(token.value());
  REQUIRE(tan.ok());

  CHECK(vs.VerifyAndConsumeTan(tan.value()).ok());
  auto replay = vs.VerifyAndConsumeTan(tan.value());
  REQUIRE(!replay.ok());
  CHECK(replay.error() == CwaError::kTanReused);

  auto invalid = vs.VerifyAndConsumeTan(w.rng().NextBytes(16));
  REQUIRE(!invalid.ok());
  CHECK(invalid.error() == CwaError::kInvalidTan);
}

TEST_CASE("upload releases any well-formed teks under a valid tan") {
  World w(SimConfig{}, 42);
  VerificationServer vs(&w, "DE");
  CwaBackend backend(&w, "DE", &vs);
  CwaTestCenter tc(&w, &vs);
  CwaPhone phone(&w, "V", "DE");

  // Fourteen days of keys.
  for (int day = 0; day < 14; ++day) {
    REQUIRE(phone.NewTek().ok());
    if (day < 13) w.AdvanceSeconds(86400);
  }
  Bytes guid = tc.IssueGuid();
  phone.ScanGuid(guid);
  REQUIRE(phone.RegisterWithVs(&vs).ok());
  tc.RecordPositive("V", guid, 0, 13);
  REQUIRE(phone.Poll(&vs).ok());
  REQUIRE(phone.ObtainTan(&vs).ok());
  auto accepted = phone.UploadOwnTeks(&backend, {});
  REQUIRE(accepted.ok());
  CHECK(accepted.value() == 14);
  CHECK(phone.teks().empty());  // material deleted after the upload

  int64_t released = 0;
  for (const auto& e : w.trace().events()) {
    if (e.kind == EventKind::kKeyReleased) ++released;
  }
  CHECK(released == 14);
}

TEST_CASE("no binding between the tan and the ownership of the keys") {
  World w(SimConfig{}, 42);
  VerificationServer vs(&w, "DE");
  CwaBackend backend(&w, "DE", &vs);
  CwaTestCenter tc(&w, &vs);
  CwaPhone positive(&w, "V", "DE");
  CwaPhone other(&w, "W", "DE");
  REQUIRE(other.NewTek().ok());

  Bytes guid = tc.IssueGuid();
  positive.ScanGuid(guid);
  positive.RegisterWithVs(&vs);
  tc.RecordPositive("V", guid, 0, 2);
  positive.Poll(&vs);
  auto tan = positive.ObtainTan(&vs);
  REQUIRE(tan.ok());

  // The other phone's key passes without any ownership check.
  std::vector<UploadedTek> teks = {
      {crypto::ToVec(other.TekForDay(0).key), 0}};
  auto accepted = backend.ProcessUpload(teks, tan.value(), {});
  REQUIRE(accepted.ok());
  CHECK(accepted.value() == 1);

  // The consumed tan cannot authorise a second upload.
  auto reused = backend.ProcessUpload(teks, tan.value(), {});
  REQUIRE(!reused.ok());
  CHECK(reused.error() == CwaError::kTanReused);
}

TEST_CASE("fabricated results only sway the phone, not the server") {
  World w(SimConfig{}, 42);
  VerificationServer vs(&w, "DE");
  CwaPhone phone(&w, "P", "DE");
  phone.AcceptResult(TestResult::kPositive);
  CHECK(phone.believed_result() == TestResult::kPositive);
}

TEST_CASE("efgs serves keys to origin and visited countries") {
  World w(SimConfig{}, 42);
  VerificationServer vs_de(&w, "DE");
  VerificationServer vs_fr(&w, "FR");
  CwaBackend de(&w, "DE", &vs_de);
  CwaBackend fr(&w, "FR", &vs_fr);
  CwaBackend it(&w, "IT", &vs_fr);
  EfgsHub hub;
  de.ConnectHub(&hub);
  fr.ConnectHub(&hub);
  it.ConnectHub(&hub);

  CwaTestCenter tc(&w, &vs_de);
  CwaPhone traveller(&w, "T", "DE");
  REQUIRE(traveller.NewTek().ok());
  Bytes guid = tc.IssueGuid();
  traveller.ScanGuid(guid);
  traveller.RegisterWithVs(&vs_de);
  tc.RecordPositive("T", guid, 0, 2);
  traveller.Poll(&vs_de);
  traveller.ObtainTan(&vs_de);
  REQUIRE(traveller.UploadOwnTeks(&de, {"FR"}).ok());

  // Past every back end's release time for day 0.
  w.AdvanceToDayTime(1, 3 * 3600);
  CHECK(de.FetchKeys().size() == 1);
  CHECK(fr.FetchKeys().size() == 1);
  CHECK(it.FetchKeys().empty());  // not visited
}

TEST_CASE("release gating follows the expiry agreement or local policy") {
  SimConfig config;
  config.efgs_expiry_agreement = false;
  World w(config, 42);
  VerificationServer vs(&w, "DE");
  CwaBackend early(&w, "DE", &vs);
  early.set_local_release_delay_hours(0);
  CwaBackend careful(&w, "FR", &vs);  // keeps the 2h default
  EfgsHub hub;
  early.ConnectHub(&hub);
  careful.ConnectHub(&hub);

  CwaTestCenter tc(&w, &vs);
  CwaPhone phone(&w, "P", "DE");
  REQUIRE(phone.NewTek().ok());
  Bytes guid = tc.IssueGuid();
  phone.ScanGuid(guid);
  phone.RegisterWithVs(&vs);
  tc.RecordPositive("P", guid, 0, 2);
  phone.Poll(&vs);
  phone.ObtainTan(&vs);
  REQUIRE(phone.UploadOwnTeks(&early, {"FR"}).ok());

  w.AdvanceToDayTime(1, 30 * 60);  // 00:30 of day 1
  CHECK(early.FetchKeys().size() == 1);  // released at end of day
  CHECK(careful.FetchKeys().empty());    // still held back

  w.AdvanceToDayTime(1, 2 * 3600 + 60);
  CHECK(careful.FetchKeys().size() == 1);
}
