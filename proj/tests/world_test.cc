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
#include <cctype>
#include <map>
#include <set>

#include "doctest.h"
#include "enslab/world.h"

using namespace enslab;

TEST_CASE("epoch numbering, unix alignment") {
  TimeConfig cfg;
  CHECK(EpochOf(Tick{0}, EpochAlignment::Unix(), cfg).value().index == 0);
  CHECK(EpochOf(Tick{600 * 1000}, EpochAlignment::Unix(), cfg).value().index ==
        1);
}

TEST_CASE("epoch numbering, country alignment") {
  TimeConfig cfg;
  auto align = EpochAlignment::Country(300);
  // floor((900 - 300) / 600) = 1
  CHECK(EpochOf(Tick{900 * 1000}, align, cfg).value().index == 1);
  auto before = EpochOf(Tick{100 * 1000}, align, cfg);
  REQUIRE(!before.ok());
  CHECK(before.error() == TimeError::kBeforeServiceStart);
}

TEST_CASE("epochs per day follows ten-minute epochs in 24-hour days") {
  TimeConfig cfg;
  CHECK(cfg.epoch_length_s == 600);
  CHECK(cfg.day_length_s() == 86400);
  CHECK(cfg.day_length_s() / cfg.epoch_length_s == 144);
}

TEST_CASE("epoch maps to exactly one day") {
  TimeConfig cfg;
  auto align = EpochAlignment::Country(1200);  // two epochs in
  for (int64_t e = 0; e < 300; ++e) {
    DayStamp d = DayOfEpoch({e}, align, cfg);
    CHECK(d.index == (e + 2) / cfg.epochs_per_day);
  }
}

TEST_CASE("within 14 days") {
  CHECK(Within14Days({5}, {5}));
  CHECK(Within14Days({0}, {14}));
  CHECK(!Within14Days({0}, {15}));
  CHECK(!Within14Days({3}, {2}));  // out of order
}

TEST_CASE("truncated timestamp wraps every 2^16 seconds") {
  CHECK(TruncatedTimestamp16(Tick{65536 * 1000}) == 0);
  CHECK(TruncatedTimestamp16(Tick{65535 * 1000}) == 65535);
  CHECK(T16Distance(0, 65535) == 1);  // wrap-aware distance
  CHECK(T16Distance(10, 4) == 6);
}

TEST_CASE("advance emits epoch and day boundaries") {
  World w(SimConfig{}, 1);
  CHECK(w.current_epoch().index == 0);
  w.AdvanceSeconds(1);
  CHECK(w.now().seconds() == 1);
  CHECK(w.current_epoch().index == 0);  // sub-epoch step
  w.AdvanceSeconds(600);
  CHECK(w.current_epoch().index == 1);

  World w2(SimConfig{}, 1);
  TimeConfig cfg;
  w2.AdvanceSeconds(cfg.epochs_per_day * cfg.epoch_length_s);
  CHECK(w2.current_day().index == 1);
  bool saw_day1 = false;
  for (const auto& e : w2.trace().events()) {
    if (e.kind == EventKind::kDay && e.day_a == 1) saw_day1 = true;
  }
  CHECK(saw_day1);
}

TEST_CASE("same-cell delivery and empty cells") {
  World w(SimConfig{}, 7);
  w.AdvanceSeconds(30);
  w.SetPlace("P", "q");
  w.SetPlace("R", "q");
  Bytes msg = {1, 2, 3};
  REQUIRE(w.BleWrite("P", "q", msg).ok());
  auto got = w.BleRead("R", "q");
  REQUIRE(got.ok());
  REQUIRE(got.value().size() == 1);
  CHECK(got.value()[0] == msg);

  w.SetPlace("P", "q2");
  auto empty = w.BleRead("P", "q2");
  REQUIRE(empty.ok());
  CHECK(empty.value().empty());
}

TEST_CASE("honest write requires presence") {
  World w(SimConfig{}, 7);
  w.SetPlace("P", "q");
  auto res = w.BleWrite("P", "elsewhere", {1});
  REQUIRE(!res.ok());
  CHECK(res.error() == WorldError::kNotPresent);
}

TEST_CASE("relay primitive: same bytes at another place, same epoch") {
  World w(SimConfig{}, 7);
  w.AdvanceSeconds(30);
  w.SetPlace("P", "q");
  Bytes msg = {9, 9};
  REQUIRE(w.BleWrite("P", "q", msg).ok());
  auto sniffed = w.AdversaryBleRead("adv", "q");
  REQUIRE(sniffed.size() == 1);
  w.AdversaryBleWrite("adv", "q2", sniffed[0]);
  w.SetPlace("R", "q2");
  auto got = w.BleRead("R", "q2");
  REQUIRE(got.ok());
  REQUIRE(got.value().size() == 1);
  CHECK(got.value()[0] == msg);
}

TEST_CASE("messages do not cross epochs (cells are per-epoch)") {
  World w(SimConfig{}, 7);
  w.AdvanceSeconds(30);
  w.SetPlace("P", "q");
  REQUIRE(w.BleWrite("P", "q", {5}).ok());
  w.AdvanceSeconds(600);  // next epoch
  w.SetPlace("R", "q");
  auto got = w.BleRead("R", "q");
  REQUIRE(got.ok());
  CHECK(got.value().empty());
}

TEST_CASE("proximity is not transitive") {
  // P1 with P2 at q, P2 with P3 at q2, all in the same epoch; P1 never
  // receives P3's message.
  World w(SimConfig{}, 7);
  w.AdvanceSeconds(30);
  w.SetPlace("P3", "q2");
  REQUIRE(w.BleWrite("P3", "q2", {33}).ok());
  w.SetPlace("P2", "q2");
  REQUIRE(w.BleRead("P2", "q2").value().size() == 1);
  w.SetPlace("P1", "q");
  w.SetPlace("P2", "q");  // same epoch, second location
  REQUIRE(w.BleWrite("P2", "q", {22}).ok());
  auto got = w.BleRead("P1", "q");
  REQUIRE(got.ok());
  REQUIRE(got.value().size() == 1);
  CHECK(got.value()[0] == Bytes{22});
}

TEST_CASE("trace monotonicity and epoch-day consistency") {
  World w(SimConfig{}, 7);
  for (int day = 0; day < 3; ++day) {
    w.AdvanceSeconds(86400 / 2);
    w.SetPlace("P", "q");
    w.BleWrite("P", "q", {static_cast<uint8_t>(day)});
  }
  const auto& events = w.trace().events();
  REQUIRE(events.size() > 3);
  int64_t last_tick = -1;
  int64_t last_day_value = -1;
  std::map<int64_t, int64_t> epoch_to_day;
  for (const auto& e : events) {
    CHECK(e.tick.ms > last_tick);  // strictly increasing
    last_tick = e.tick.ms;
    if (e.kind == EventKind::kDay) {
      CHECK(e.day_a >= last_day_value);  // non-decreasing day values
      last_day_value = e.day_a;
    }
    // Two events with equal epoch stamp carry equal day stamp.
    auto it = epoch_to_day.find(e.epoch.index);
    if (it == epoch_to_day.end()) {
      epoch_to_day[e.epoch.index] = e.day.index;
    } else {
      CHECK(it->second == e.day.index);
    }
  }
}

TEST_CASE("persistence: every read was previously written to that cell") {
  World w(SimConfig{}, 11);
  w.AdvanceSeconds(30);
  w.SetPlace("A", "q");
  w.SetPlace("B", "q");
  w.BleWrite("A", "q", {1});
  w.BleRead("B", "q");
  w.AdvanceSeconds(600);
  w.SetPlace("A", "q2");
  w.BleWrite("A", "q2", {2});
  w.AdversaryBleRead("adv", "q2");

  std::set<std::tuple<std::string, int64_t, int64_t, std::string>> written;
  for (const auto& e : w.trace().events()) {
    if (e.kind == EventKind::kBleWr) {
      written.insert({e.place, e.day.index, e.epoch.index, e.digest});
    } else if (e.kind == EventKind::kBleRd) {
      CHECK(written.count({e.place, e.day.index, e.epoch.index, e.digest}) ==
            1);
    }
  }
}

TEST_CASE("trace export format is stable") {
  World w(SimConfig{}, 3);
  w.AdvanceSeconds(30);
  w.SetPlace("P", "q");
  w.BleWrite("P", "q", {0xab});
  std::string text = w.trace().Export();
  CHECK(text.find("tick=1 day=0 epoch=0 kind=Day value=0\n") == 0);
  CHECK(text.find("kind=IsAt actor=P place=q") != std::string::npos);
  CHECK(text.find("kind=BLEwr actor=P place=q msg=") != std::string::npos);
  // Digests, not raw bytes: 16 hex chars after msg=.
  auto pos = text.find("msg=");
  REQUIRE(pos != std::string::npos);
  std::string digest = text.substr(pos + 4, 16);
  for (char c : digest) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
}

TEST_CASE("config overrides parse external key names") {
  SimConfig cfg;
  CHECK(cfg.ApplyOverride("robert.hello_tolerance_s", "9"));
  CHECK(cfg.robert_hello_tolerance_s == 9);
  CHECK(cfg.ApplyOverride("cwa.one_tan_per_token", "false"));
  CHECK(!cfg.cwa_one_tan_per_token);
  CHECK(cfg.ApplyOverride("efgs.expiry_agreement", "true"));
  CHECK(!cfg.ApplyOverride("no.such.key", "1"));
  CHECK(!cfg.ApplyOverride("robert.batch_limit", "xyz"));
}
