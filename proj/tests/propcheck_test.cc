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
#include "enslab/propcheck.h"
#include "naive_checker.h"
#include "random_traces.h"

using namespace enslab;
using namespace enslab::propcheck;

namespace {

// Small synthetic-trace builder with auto-incrementing ticks.
struct TraceBuilder {
  Trace trace;
  int64_t tick = 0;

  TraceEvent Base(EventKind kind) {
    TraceEvent e;
    e.tick = Tick{++tick * 1000};
    e.kind = kind;
    return e;
  }
  TraceBuilder& IsAt(const std::string& actor, const std::string& place,
                     int64_t epoch) {
    auto e = Base(EventKind::kIsAt);
    e.actor = actor;
    e.place = place;
    e.epoch = {epoch};
    e.day = {epoch / 144};
    trace.Append(e);
    return *this;
  }
  TraceBuilder& Claim(const std::string& actor, int64_t day_close,
                      int64_t inst_close) {
    auto e = Base(EventKind::kPClaimAtRisk);
    e.actor = actor;
    e.day_a = day_close;
    e.epoch_a = inst_close;
    trace.Append(e);
    return *this;
  }
  TraceBuilder& HaClaim(const std::string& actor, int64_t contag,
                        int64_t test) {
    auto e = Base(EventKind::kHAClaimInfected);
    e.actor = actor;
    e.day_a = contag;
    e.day_b = test;
    trace.Append(e);
    return *this;
  }
  TraceBuilder& Positive(const std::string& actor) {
    auto e = Base(EventKind::kTestPositive);
    e.actor = actor;
    e.day_a = 2;
    trace.Append(e);
    return *this;
  }
  TraceBuilder& CreateKey(const std::string& actor, const std::string& key) {
    auto e = Base(EventKind::kCreateKey);
    e.actor = actor;
    e.day_a = 0;
    e.digest = key;
    trace.Append(e);
    return *this;
  }
  TraceBuilder& Released(const std::string& key) {
    auto e = Base(EventKind::kKeyReleased);
    e.digest = key;
    e.day_a = 0;
    e.country = "DE";
    trace.Append(e);
    return *this;
  }
  TraceBuilder& Upload(const std::string& actor) {
    auto e = Base(EventKind::kUploadAccepted);
    e.actor = actor;
    e.digest = "tok";
    e.count = 1;
    e.country = "FR";
    trace.Append(e);
    return *this;
  }
};

}  // namespace

TEST_CASE("empty trace has no violations") {
  Trace trace;
  auto soundness = CheckSoundness(trace, Protocol::kRobert);
  REQUIRE(soundness.ok());
  CHECK(soundness.value().empty());
  auto upload = CheckUploadAuth(trace, Protocol::kCwa);
  REQUIRE(upload.ok());
  CHECK(upload.value().empty());
}

TEST_CASE("an honest end-to-end trace binds its witness") {
  // Hand-checkable ten-event trace: R and I share q1 at epoch 3, I is
  // diagnosed for [0,2), R claims exposure at (day 0, epoch 3).
  TraceBuilder b;
  b.IsAt("R", "q1", 3)
      .IsAt("I", "q1", 3)
      .HaClaim("I", 0, 2)
      .Positive("I")
      .Upload("I")
      .Claim("R", 0, 3);
  auto result = CheckSoundness(b.trace, Protocol::kRobert);
  REQUIRE(result.ok());
  CHECK(result.value().empty());
  // The independent enumerator agrees.
  CHECK(naive::NaiveSoundness(b.trace).empty());

  auto upload = CheckUploadAuth(b.trace, Protocol::kRobert);
  REQUIRE(upload.ok());
  CHECK(upload.value().empty());
}

TEST_CASE("relay-shaped trace fails exactly condition c") {
  // Victim at q1, infected at q2: no shared place at the claimed epoch.
  TraceBuilder b;
  b.IsAt("V", "q1", 3)
      .IsAt("I", "q2", 3)
      .HaClaim("I", 0, 2)
      .Positive("I")
      .Claim("V", 0, 3);
  auto result = CheckSoundness(b.trace, Protocol::kRobert);
  REQUIRE(result.ok());
  REQUIRE(result.value().size() == 1);
  CHECK(result.value()[0].failed_conditions == std::set<Cond>{Cond::kC});
}

TEST_CASE("window-shaped trace fails exactly condition d") {
  TraceBuilder b;
  b.IsAt("V", "q1", 3)
      .IsAt("I", "q1", 3)
      .HaClaim("I", 8, 9)
      .Positive("I")
      .Claim("V", 0, 3);
  auto result = CheckSoundness(b.trace, Protocol::kRobert);
  REQUIRE(result.ok());
  REQUIRE(result.value().size() == 1);
  CHECK(result.value()[0].failed_conditions == std::set<Cond>{Cond::kD});
}

TEST_CASE("reflection-shaped trace fails exactly condition e") {
  TraceBuilder b;
  b.IsAt("I", "q1", 3).HaClaim("I", 0, 2).Positive("I").Claim("I", 0, 3);
  auto result = CheckSoundness(b.trace, Protocol::kRobert);
  REQUIRE(result.ok());
  REQUIRE(result.value().size() == 1);
  CHECK(result.value()[0].failed_conditions == std::set<Cond>{Cond::kE});
}

TEST_CASE("the upper bound on the exposure day is strict") {
  TraceBuilder b;
  b.IsAt("V", "q1", 300)
      .IsAt("I", "q1", 300)
      .HaClaim("I", 0, 2)
      .Positive("I")
      .Claim("V", 2, 300);  // exposure on the test day itself
  auto result = CheckSoundness(b.trace, Protocol::kDp3t);
  REQUIRE(result.ok());
  REQUIRE(result.value().size() == 1);
  CHECK(result.value()[0].failed_conditions == std::set<Cond>{Cond::kD});
}

TEST_CASE("interval wider than fourteen days fails condition b") {
  TraceBuilder b;
  b.IsAt("V", "q1", 3)
      .IsAt("I", "q1", 3)
      .HaClaim("I", 0, 15)
      .Positive("I")
      .Claim("V", 0, 3);
  auto result = CheckSoundness(b.trace, Protocol::kRobert);
  REQUIRE(result.ok());
  REQUIRE(result.value().size() == 1);
  CHECK(result.value()[0].failed_conditions == std::set<Cond>{Cond::kB});
}

TEST_CASE("metamorphic: adding a full witness removes the violation") {
  TraceBuilder b;
  b.IsAt("V", "q1", 3).Claim("V", 0, 3);
  auto before = CheckSoundness(b.trace, Protocol::kRobert);
  REQUIRE(before.ok());
  REQUIRE(before.value().size() == 1);

  b.IsAt("I", "q1", 3).HaClaim("I", 0, 2);
  auto after = CheckSoundness(b.trace, Protocol::kRobert);
  REQUIRE(after.ok());
  CHECK(after.value().empty());
}

TEST_CASE("upload authorisation for released keys") {
  SUBCASE("honest: creator diagnosed before release") {
    TraceBuilder b;
    b.CreateKey("V", "k1").Positive("V").Released("k1");
    auto result = CheckUploadAuth(b.trace, Protocol::kCwa);
    REQUIRE(result.ok());
    CHECK(result.value().empty());
  }
  SUBCASE("another phone's key released without its diagnosis") {
    TraceBuilder b;
    b.CreateKey("W", "k1").Positive("V").Released("k1");
    auto result = CheckUploadAuth(b.trace, Protocol::kCwa);
    REQUIRE(result.ok());
    REQUIRE(result.value().size() == 1);
    CHECK(result.value()[0].property == Property::kUploadAuthGaen);
  }
  SUBCASE("forged keys are not constrained") {
    TraceBuilder b;
    b.Positive("V").Released("k9");
    auto result = CheckUploadAuth(b.trace, Protocol::kCwa);
    REQUIRE(result.ok());
    CHECK(result.value().empty());
  }
  SUBCASE("diagnosis after the release does not count") {
    TraceBuilder b;
    b.CreateKey("V", "k1").Released("k1").Positive("V");
    auto result = CheckUploadAuth(b.trace, Protocol::kCwa);
    REQUIRE(result.ok());
    CHECK(result.value().size() == 1);
  }
}

TEST_CASE("upload authorisation for robert accepted uploads") {
  TraceBuilder b;
  b.Positive("I").Upload("I").Upload("M");
  auto result = CheckUploadAuth(b.trace, Protocol::kRobert);
  REQUIRE(result.ok());
  REQUIRE(result.value().size() == 1);
  CHECK(result.value()[0].property == Property::kUploadAuthRobert);
  CHECK(b.trace.at(result.value()[0].witness_index).actor == "M");
}

TEST_CASE("malformed traces are a schema error") {
  Trace trace;
  TraceEvent bad;
  bad.tick = Tick{1000};
  bad.kind = EventKind::kPClaimAtRisk;
  bad.actor = "V";
  bad.day_a = -1;  // missing argument
  bad.epoch_a = 3;
  trace.Append(bad);
  auto result = CheckSoundness(trace, Protocol::kRobert);
  REQUIRE(!result.ok());
  CHECK(result.error() == CheckError::kTraceSchemaError);
}

TEST_CASE("violation report lines carry all named fields") {
  TraceBuilder b;
  b.IsAt("V", "q1", 3)
      .IsAt("I", "q2", 3)
      .HaClaim("I", 0, 2)
      .Positive("I")
      .Claim("V", 0, 3);
  auto result = CheckSoundness(b.trace, Protocol::kRobert);
  REQUIRE(result.ok());
  REQUIRE(result.value().size() == 1);
  std::string line = FormatViolation(result.value()[0], b.trace);
  CHECK(line.find("property=Soundness") != std::string::npos);
  CHECK(line.find("witness_tick=") != std::string::npos);
  CHECK(line.find("failed=c") != std::string::npos);
  CHECK(line.find("pattern=") != std::string::npos);
  CHECK(line.find("evidence=") != std::string::npos);
}

TEST_CASE("pattern names round-trip") {
  for (int i = 0; i < kPatternCount; ++i) {
    auto id = static_cast<PatternId>(i);
    auto back = PatternFromName(PatternName(id));
    REQUIRE(back.has_value());
    CHECK(*back == id);
  }
  CHECK(!PatternFromName("Q9").has_value());
}

TEST_CASE("optimized checker equals the naive enumerator on random traces") {
  int soundness_violations = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Trace trace = testing::RandomTrace(seed);

    auto fast = CheckSoundness(trace, Protocol::kRobert);
    REQUIRE(fast.ok());
    std::set<naive::NaiveViolation> fast_set;
    for (const auto& v : fast.value()) {
      fast_set.insert({v.witness_index, v.property, v.failed_conditions});
    }
    auto slow = naive::NaiveSoundness(trace);
    std::set<naive::NaiveViolation> slow_set(slow.begin(), slow.end());
    CHECK(fast_set == slow_set);
    soundness_violations += static_cast<int>(slow.size());

    for (Protocol protocol : {Protocol::kRobert, Protocol::kCwa}) {
      auto fast_up = CheckUploadAuth(trace, protocol);
      REQUIRE(fast_up.ok());
      std::set<std::pair<size_t, Property>> fast_up_set;
      for (const auto& v : fast_up.value()) {
        fast_up_set.insert({v.witness_index, v.property});
      }
      std::set<std::pair<size_t, Property>> slow_up_set;
      for (const auto& v : naive::NaiveUploadAuth(trace, protocol)) {
        slow_up_set.insert({v.witness_index, v.property});
      }
      CHECK(fast_up_set == slow_up_set);
    }
  }
  // The random domains are small enough that both verdicts appear.
  CHECK(soundness_violations > 0);
}
