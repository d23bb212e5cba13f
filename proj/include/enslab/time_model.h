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

#ifndef ENSLAB_TIME_MODEL_H_
#define ENSLAB_TIME_MODEL_H_

#include <compare>
#include <cstdint>

#include "enslab/result.h"

namespace enslab {

// Simulation clock value. One tick is a millisecond; protocol-level time
// arithmetic (epochs, days, truncated timestamps) happens on whole seconds.
// The sub-second resolution exists so every trace event can occupy its own
// strictly increasing tick.
struct Tick {
  int64_t ms = 0;
  int64_t seconds() const { return ms / 1000; }
  auto operator<=>(const Tick&) const = default;
};

struct DayStamp {
  int64_t index = 0;
  auto operator<=>(const DayStamp&) const = default;
};

struct EpochStamp {
  int64_t index = 0;
  auto operator<=>(const EpochStamp&) const = default;
};

struct TimeConfig {
  int64_t epoch_length_s = 600;
  int64_t epochs_per_day = 144;
  int64_t day_length_s() const { return epoch_length_s * epochs_per_day; }
};

enum class AlignmentKind { kUnixAligned, kCountryAligned };

// Epoch numbering origin. Unix alignment starts at second 0; country
// alignment starts at the back end's service start, which must fall on an
// epoch boundary so every epoch maps to exactly one day.
struct EpochAlignment {
  AlignmentKind kind = AlignmentKind::kUnixAligned;
  int64_t start_offset_s = 0;

  static EpochAlignment Unix() { return {}; }
  static EpochAlignment Country(int64_t start_s) {
    return {AlignmentKind::kCountryAligned, start_s};
  }
};

enum class TimeError { kBeforeServiceStart };

Result<EpochStamp, TimeError> EpochOf(Tick tick, const EpochAlignment& align,
                                      const TimeConfig& cfg);

DayStamp DayOfEpoch(EpochStamp epoch, const EpochAlignment& align,
                    const TimeConfig& cfg);

// Converts a country-aligned epoch index to the unix-aligned index of the
// same wall-clock interval.
EpochStamp ToUnixEpoch(EpochStamp epoch, const EpochAlignment& align,
                       const TimeConfig& cfg);

inline DayStamp UnixDayOf(Tick tick, const TimeConfig& cfg) {
  return {tick.seconds() / cfg.day_length_s()};
}
inline EpochStamp UnixEpochOf(Tick tick, const TimeConfig& cfg) {
  return {tick.seconds() / cfg.epoch_length_s};
}

// True iff the two day stamps are at most 14 days apart, in order.
inline bool Within14Days(DayStamp d1, DayStamp d2) {
  return d2.index - d1.index >= 0 && d2.index - d1.index <= 14;
}

// Low 16 bits of the wall-clock second counter; wraps roughly every 18 h.
inline uint16_t TruncatedTimestamp16(Tick tick) {
  return static_cast<uint16_t>(tick.seconds() & 0xffff);
}

// Wrap-aware distance between two 16-bit truncated timestamps, in seconds.
inline int64_t T16Distance(uint16_t a, uint16_t b) {
  uint16_t d1 = static_cast<uint16_t>(a - b);
  uint16_t d2 = static_cast<uint16_t>(b - a);
  return d1 < d2 ? d1 : d2;
}

}  // namespace enslab

#endif  // ENSLAB_TIME_MODEL_H_
