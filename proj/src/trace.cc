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

#include "enslab/trace.h"

#include <cassert>
#include <fstream>
#include <sstream>

namespace enslab {

const char* EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kIsAt:
      return "IsAt";
    case EventKind::kDay:
      return "Day";
    case EventKind::kEpoch:
      return "Epoch";
    case EventKind::kBleWr:
      return "BLEwr";
    case EventKind::kBleRd:
      return "BLErd";
    case EventKind::kPClaimAtRisk:
      return "PClaimAtRisk";
    case EventKind::kHAClaimInfected:
      return "HAClaimInfected";
    case EventKind::kPhoneInit:
      return "PhoneInit";
    case EventKind::kCreateKey:
      return "CreateKey";
    case EventKind::kMarkPositive:
      return "MarkPositive";
    case EventKind::kTestPositive:
      return "TestPositive";
    case EventKind::kCorrupt:
      return "Corrupt";
    case EventKind::kUploadAccepted:
      return "UploadAccepted";
    case EventKind::kKeyReleased:
      return "KeyReleased";
  }
  return "?";
}

void Trace::Append(TraceEvent event) {
  // Event ticks are strictly increasing; World::Emit guarantees this by
  // construction, asserted here as the trace invariant.
  assert(events_.empty() || event.tick > events_.back().tick);
  events_.push_back(std::move(event));
}

std::string FormatEvent(const TraceEvent& e) {
  std::ostringstream out;
  out << "tick=" << e.tick.ms << " day=" << e.day.index
      << " epoch=" << e.epoch.index << " kind=" << EventKindName(e.kind);
  switch (e.kind) {
    case EventKind::kIsAt:
      out << " actor=" << e.actor << " place=" << e.place;
      break;
    case EventKind::kDay:
      out << " value=" << e.day_a;
      break;
    case EventKind::kEpoch:
      out << " value=" << e.epoch_a;
      break;
    case EventKind::kBleWr:
    case EventKind::kBleRd:
      out << " actor=" << e.actor << " place=" << e.place
          << " msg=" << e.digest;
      break;
    case EventKind::kPClaimAtRisk:
      out << " actor=" << e.actor << " day_close=" << e.day_a
          << " inst_close=" << e.epoch_a;
      break;
    case EventKind::kHAClaimInfected:
      out << " actor=" << e.actor << " day_contag=" << e.day_a
          << " day_test=" << e.day_b;
      break;
    case EventKind::kPhoneInit:
      out << " actor=" << e.actor << " country=" << e.country;
      break;
    case EventKind::kCreateKey:
      out << " actor=" << e.actor << " key_day=" << e.day_a
          << " key=" << e.digest;
      break;
    case EventKind::kMarkPositive:
      out << " actor=" << e.actor;
      break;
    case EventKind::kTestPositive:
      out << " actor=" << e.actor << " day_test=" << e.day_a;
      break;
    case EventKind::kCorrupt:
      out << " target=" << e.actor << " label=" << e.label
          << " payload=" << e.digest;
      break;
    case EventKind::kUploadAccepted:
      out << " actor=" << e.actor << " token=" << e.digest
          << " accepted=" << e.count << " country=" << e.country;
      break;
    case EventKind::kKeyReleased:
      out << " key=" << e.digest << " key_day=" << e.day_a
          << " country=" << e.country;
      break;
  }
  return out.str();
}

std::string Trace::Export() const {
  std::string out;
  for (const auto& e : events_) {
    out += FormatEvent(e);
    out += '\n';
  }
  return out;
}

void Trace::WriteTo(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  f << Export();
}

}  // namespace enslab
