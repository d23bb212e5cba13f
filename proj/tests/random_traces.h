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

#ifndef ENSLAB_TESTS_RANDOM_TRACES_H_
#define ENSLAB_TESTS_RANDOM_TRACES_H_

// Randomized small traces over tiny domains, for checker/oracle
// equivalence runs.

#include <random>

#include "enslab/trace.h"

namespace enslab::testing {

inline Trace RandomTrace(uint64_t seed, size_t max_events = 50) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int64_t bound) {
    return static_cast<int64_t>(rng() % static_cast<uint64_t>(bound));
  };
  const char* actors[] = {"P1", "P2", "P3"};
  const char* places[] = {"q1", "q2"};
  const char* keys[] = {"k1", "k2", "k3"};

  Trace trace;
  size_t n = 5 + static_cast<size_t>(pick(static_cast<int64_t>(max_events - 5)));
  for (size_t i = 0; i < n; ++i) {
    TraceEvent e;
    e.tick = Tick{static_cast<int64_t>(i + 1) * 1000};
    int64_t epoch = pick(20);
    e.epoch = {epoch};
    e.day = {epoch / 4};
    switch (pick(7)) {
      case 0:
        e.kind = EventKind::kIsAt;
        e.actor = actors[pick(3)];
        e.place = places[pick(2)];
        break;
      case 1:
        e.kind = EventKind::kPClaimAtRisk;
        e.actor = actors[pick(3)];
        e.day_a = pick(5);
        e.epoch_a = pick(20);
        break;
      case 2:
        e.kind = EventKind::kHAClaimInfected;
        e.actor = actors[pick(3)];
        e.day_a = pick(5);
        e.day_b = pick(6);
        break;
      case 3:
        e.kind = EventKind::kTestPositive;
        e.actor = actors[pick(3)];
        e.day_a = pick(5);
        break;
      case 4:
        e.kind = EventKind::kCreateKey;
        e.actor = actors[pick(3)];
        e.day_a = pick(5);
        e.digest = keys[pick(3)];
        break;
      case 5:
        e.kind = EventKind::kKeyReleased;
        e.digest = keys[pick(3)];
        e.day_a = pick(5);
        e.country = "DE";
        break;
      default:
        e.kind = EventKind::kUploadAccepted;
        e.actor = actors[pick(3)];
        e.digest = "t";
        e.count = 1;
        e.country = "FR";
        break;
    }
    trace.Append(e);
  }
  return trace;
}

}  // namespace enslab::testing

#endif  // ENSLAB_TESTS_RANDOM_TRACES_H_
