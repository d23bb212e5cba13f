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

#ifndef ENSLAB_TRACE_H_
#define ENSLAB_TRACE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "enslab/time_model.h"

namespace enslab {

// Event vocabulary of the temporal model. The trace is the only input the
// property checker sees, so everything observable must be logged here.
enum class EventKind {
  kIsAt,
  kDay,
  kEpoch,
  kBleWr,
  kBleRd,
  kPClaimAtRisk,
  kHAClaimInfected,
  kPhoneInit,
  kCreateKey,
  kMarkPositive,
  kTestPositive,
  kCorrupt,
  kUploadAccepted,
  kKeyReleased,
};

const char* EventKindName(EventKind kind);

// One trace record. `day`/`epoch` are the unix-aligned stamps of the moment
// the event occurred; the remaining fields are kind-specific arguments:
//
//   IsAt            actor, place
//   Day / Epoch     day_a / epoch_a carries the new index
//   BLEwr / BLErd   actor, place, digest (message bytes; reads log per msg)
//   PClaimAtRisk    actor (idR), day_a (dayClose), epoch_a (instClose)
//   HAClaimInfected actor (idI), day_a (contagious start), day_b (test day)
//   PhoneInit       actor, country
//   CreateKey       actor, day_a (key day), digest (key)
//   MarkPositive    actor
//   TestPositive    actor, day_a (test day)
//   Corrupt         actor (target), label (capability), digest (payload)
//   UploadAccepted  actor (uploader), digest (token), count, country
//   KeyReleased     digest (key), day_a (key day), country
struct TraceEvent {
  Tick tick;
  DayStamp day;
  EpochStamp epoch;
  EventKind kind = EventKind::kIsAt;
  std::string actor;
  std::string place;
  std::string country;
  std::string label;
  std::string digest;
  int64_t day_a = -1;
  int64_t day_b = -1;
  int64_t epoch_a = -1;
  int64_t count = -1;
};

class Trace {
 public:
  void Append(TraceEvent event);

  const std::vector<TraceEvent>& events() const { return events_; }
  size_t size() const { return events_.size(); }
  const TraceEvent& at(size_t i) const { return events_.at(i); }

  // Newline-delimited export, one event per line, stable field order,
  // digests instead of raw bytes.
  std::string Export() const;
  void WriteTo(const std::string& path) const;

 private:
  std::vector<TraceEvent> events_;
};

std::string FormatEvent(const TraceEvent& event);

}  // namespace enslab

#endif  // ENSLAB_TRACE_H_
