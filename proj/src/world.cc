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

#include "enslab/world.h"

#include "enslab/crypto.h"

namespace enslab {

World::World(SimConfig config, uint64_t seed)
    : config_(config), rng_(seed), now_{0} {
  // Anchor the trace with the initial day/epoch.
  TraceEvent day;
  day.kind = EventKind::kDay;
  day.day_a = 0;
  Emit(day);
  TraceEvent epoch;
  epoch.kind = EventKind::kEpoch;
  epoch.epoch_a = 0;
  Emit(epoch);
  last_day_emitted_ = 0;
  last_epoch_emitted_ = 0;
}

void World::Emit(TraceEvent event) {
  now_.ms += 1;
  event.tick = now_;
  event.day = current_day();
  event.epoch = current_epoch();
  trace_.Append(std::move(event));
}

Tick World::AdvanceSeconds(int64_t seconds) {
  int64_t target_ms = now_.ms + seconds * 1000;
  while (true) {
    int64_t next_epoch_index = last_epoch_emitted_ + 1;
    int64_t boundary_ms =
        next_epoch_index * config_.time.epoch_length_s * 1000;
    if (boundary_ms > target_ms) break;
    // Emit() bumps by one tick, so the boundary event lands on the boundary
    // second itself; a co-located Day event precedes the Epoch event.
    if (now_.ms < boundary_ms - 1) now_.ms = boundary_ms - 1;
    if (next_epoch_index % config_.time.epochs_per_day == 0) {
      TraceEvent day;
      day.kind = EventKind::kDay;
      day.day_a = next_epoch_index / config_.time.epochs_per_day;
      Emit(day);
      last_day_emitted_ = day.day_a;
    }
    TraceEvent epoch;
    epoch.kind = EventKind::kEpoch;
    epoch.epoch_a = next_epoch_index;
    Emit(epoch);
    last_epoch_emitted_ = next_epoch_index;
  }
  if (now_.ms < target_ms) now_.ms = target_ms;
  return now_;
}

Tick World::AdvanceToDayTime(int64_t day_index, int64_t second_of_day) {
  int64_t target_s = day_index * config_.time.day_length_s() + second_of_day;
  int64_t delta = target_s - now_.seconds();
  if (delta > 0) AdvanceSeconds(delta);
  return now_;
}

void World::SetPlace(const std::string& actor, const std::string& place) {
  places_[actor] = place;
}

std::string World::PlaceOf(const std::string& actor) const {
  auto it = places_.find(actor);
  return it == places_.end() ? std::string() : it->second;
}

World::CellKey World::CurrentCell(const std::string& place) const {
  return {place, current_day().index, current_epoch().index};
}

void World::WriteCell(const std::string& actor, const std::string& place,
                      const Bytes& message) {
  TraceEvent e;
  e.kind = EventKind::kBleWr;
  e.actor = actor;
  e.place = place;
  e.digest = crypto::DigestHex(message);
  Emit(e);
  cells_[CurrentCell(place)].push_back(message);
}

std::vector<Bytes> World::ReadCell(const std::string& actor,
                                   const std::string& place) {
  auto it = cells_.find(CurrentCell(place));
  std::vector<Bytes> msgs = it == cells_.end() ? std::vector<Bytes>{} : it->second;
  for (const auto& m : msgs) {
    TraceEvent e;
    e.kind = EventKind::kBleRd;
    e.actor = actor;
    e.place = place;
    e.digest = crypto::DigestHex(m);
    Emit(e);
  }
  return msgs;
}

Result<Unit, WorldError> World::BleWrite(const std::string& actor,
                                         const std::string& place,
                                         const Bytes& message) {
  if (PlaceOf(actor) != place) return WorldError::kNotPresent;
  EmitIsAt(actor, place);
  WriteCell(actor, place, message);
  return Unit{};
}

Result<std::vector<Bytes>, WorldError> World::BleRead(const std::string& actor,
                                                      const std::string& place) {
  if (PlaceOf(actor) != place) return WorldError::kNotPresent;
  EmitIsAt(actor, place);
  return ReadCell(actor, place);
}

void World::AdversaryBleWrite(const std::string& adversary,
                              const std::string& place, const Bytes& message) {
  WriteCell(adversary, place, message);
}

std::vector<Bytes> World::AdversaryBleRead(const std::string& adversary,
                                           const std::string& place) {
  return ReadCell(adversary, place);
}

void World::EmitIsAt(const std::string& actor, const std::string& place) {
  TraceEvent e;
  e.kind = EventKind::kIsAt;
  e.actor = actor;
  e.place = place;
  Emit(e);
}

void World::EmitPClaimAtRisk(const std::string& actor, DayStamp day_close,
                             EpochStamp inst_close) {
  TraceEvent e;
  e.kind = EventKind::kPClaimAtRisk;
  e.actor = actor;
  e.day_a = day_close.index;
  e.epoch_a = inst_close.index;
  Emit(e);
}

void World::EmitHAClaimInfected(const std::string& actor,
                                DayStamp contagious_start, DayStamp test_day) {
  TraceEvent e;
  e.kind = EventKind::kHAClaimInfected;
  e.actor = actor;
  e.day_a = contagious_start.index;
  e.day_b = test_day.index;
  Emit(e);
}

void World::EmitPhoneInit(const std::string& actor,
                          const std::string& country) {
  TraceEvent e;
  e.kind = EventKind::kPhoneInit;
  e.actor = actor;
  e.country = country;
  Emit(e);
}

void World::EmitCreateKey(const std::string& actor, DayStamp key_day,
                          const std::string& key_digest) {
  TraceEvent e;
  e.kind = EventKind::kCreateKey;
  e.actor = actor;
  e.day_a = key_day.index;
  e.digest = key_digest;
  Emit(e);
}

void World::EmitMarkPositive(const std::string& actor) {
  TraceEvent e;
  e.kind = EventKind::kMarkPositive;
  e.actor = actor;
  Emit(e);
}

void World::EmitTestPositive(const std::string& actor, DayStamp test_day) {
  TraceEvent e;
  e.kind = EventKind::kTestPositive;
  e.actor = actor;
  e.day_a = test_day.index;
  Emit(e);
}

void World::EmitCorrupt(const std::string& target, const std::string& label,
                        const std::string& payload_digest) {
  TraceEvent e;
  e.kind = EventKind::kCorrupt;
  e.actor = target;
  e.label = label;
  e.digest = payload_digest;
  Emit(e);
}

void World::EmitUploadAccepted(const std::string& uploader,
                               const std::string& token_digest,
                               int64_t accepted, const std::string& country) {
  TraceEvent e;
  e.kind = EventKind::kUploadAccepted;
  e.actor = uploader;
  e.digest = token_digest;
  e.count = accepted;
  e.country = country;
  Emit(e);
}

void World::EmitKeyReleased(const std::string& key_digest, DayStamp key_day,
                            const std::string& country) {
  TraceEvent e;
  e.kind = EventKind::kKeyReleased;
  e.digest = key_digest;
  e.day_a = key_day.index;
  e.country = country;
  Emit(e);
}

}  // namespace enslab
