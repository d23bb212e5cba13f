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

#ifndef ENSLAB_WORLD_H_
#define ENSLAB_WORLD_H_

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "enslab/bytes.h"
#include "enslab/config.h"
#include "enslab/result.h"
#include "enslab/rng.h"
#include "enslab/trace.h"

namespace enslab {

enum class WorldError { kNotPresent };

// Discretized time, tagged space and the shared Bluetooth space-time
// channel. Cells are keyed by (place, day, epoch); messages written to a
// cell persist for the rest of the simulation.
class World {
 public:
  World(SimConfig config, uint64_t seed);

  const SimConfig& config() const { return config_; }
  Rng& rng() { return rng_; }
  Trace& trace() { return trace_; }
  const Trace& trace() const { return trace_; }

  Tick now() const { return now_; }
  DayStamp current_day() const { return UnixDayOf(now_, config_.time); }
  EpochStamp current_epoch() const { return UnixEpochOf(now_, config_.time); }

  // Advances the clock, emitting Epoch/Day events at each boundary crossed.
  Tick AdvanceSeconds(int64_t seconds);
  // Jumps to the given second offset within the given day.
  Tick AdvanceToDayTime(int64_t day_index, int64_t second_of_day);

  // Places an actor; honest BLE operations check presence against this.
  void SetPlace(const std::string& actor, const std::string& place);
  std::string PlaceOf(const std::string& actor) const;

  // Honest write: the actor must occupy `place` and additionally logs IsAt.
  Result<Unit, WorldError> BleWrite(const std::string& actor,
                                    const std::string& place,
                                    const Bytes& message);
  // Honest read: returns every message in the current (place, day, epoch)
  // cell; logs IsAt plus one BLErd per message.
  Result<std::vector<Bytes>, WorldError> BleRead(const std::string& actor,
                                                 const std::string& place);

  // Adversary channel access: any place, no IsAt, still logged.
  void AdversaryBleWrite(const std::string& adversary,
                         const std::string& place, const Bytes& message);
  std::vector<Bytes> AdversaryBleRead(const std::string& adversary,
                                      const std::string& place);

  // Event emission. Each call advances the clock by one tick (1 ms) so
  // event ticks are strictly increasing, then stamps day/epoch.
  void Emit(TraceEvent event);

  void EmitIsAt(const std::string& actor, const std::string& place);
  void EmitPClaimAtRisk(const std::string& actor, DayStamp day_close,
                        EpochStamp inst_close);
  void EmitHAClaimInfected(const std::string& actor, DayStamp contagious_start,
                           DayStamp test_day);
  void EmitPhoneInit(const std::string& actor, const std::string& country);
  void EmitCreateKey(const std::string& actor, DayStamp key_day,
                     const std::string& key_digest);
  void EmitMarkPositive(const std::string& actor);
  void EmitTestPositive(const std::string& actor, DayStamp test_day);
  void EmitCorrupt(const std::string& target, const std::string& label,
                   const std::string& payload_digest);
  void EmitUploadAccepted(const std::string& uploader,
                          const std::string& token_digest, int64_t accepted,
                          const std::string& country);
  void EmitKeyReleased(const std::string& key_digest, DayStamp key_day,
                       const std::string& country);

 private:
  using CellKey = std::tuple<std::string, int64_t, int64_t>;

  CellKey CurrentCell(const std::string& place) const;
  void WriteCell(const std::string& actor, const std::string& place,
                 const Bytes& message);
  std::vector<Bytes> ReadCell(const std::string& actor,
                              const std::string& place);

  SimConfig config_;
  Rng rng_;
  Trace trace_;
  Tick now_;
  std::map<std::string, std::string> places_;
  std::map<CellKey, std::vector<Bytes>> cells_;
  int64_t last_epoch_emitted_ = -1;
  int64_t last_day_emitted_ = -1;
};

}  // namespace enslab

#endif  // ENSLAB_WORLD_H_
