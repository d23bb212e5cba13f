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

#include "enslab/time_model.h"

namespace enslab {

Result<EpochStamp, TimeError> EpochOf(Tick tick, const EpochAlignment& align,
                                      const TimeConfig& cfg) {
  int64_t s = tick.seconds();
  if (align.kind == AlignmentKind::kCountryAligned) {
    if (s < align.start_offset_s) return TimeError::kBeforeServiceStart;
    s -= align.start_offset_s;
  }
  return EpochStamp{s / cfg.epoch_length_s};
}

DayStamp DayOfEpoch(EpochStamp epoch, const EpochAlignment& align,
                    const TimeConfig& cfg) {
  int64_t offset_epochs = 0;
  if (align.kind == AlignmentKind::kCountryAligned) {
    offset_epochs = align.start_offset_s / cfg.epoch_length_s;
  }
  return DayStamp{(epoch.index + offset_epochs) / cfg.epochs_per_day};
}

EpochStamp ToUnixEpoch(EpochStamp epoch, const EpochAlignment& align,
                       const TimeConfig& cfg) {
  if (align.kind == AlignmentKind::kUnixAligned) return epoch;
  return EpochStamp{epoch.index + align.start_offset_s / cfg.epoch_length_s};
}

}  // namespace enslab
