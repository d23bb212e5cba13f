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

#ifndef ENSLAB_CONFIG_H_
#define ENSLAB_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>

#include "enslab/time_model.h"

namespace enslab {

// All scenario-tunable knobs with their deployed-protocol defaults.
// Mitigation flags default to the fixed/deployed behaviour; attack
// scenarios flip them off explicitly.
struct SimConfig {
  TimeConfig time;

  // ROBERT
  int64_t robert_hello_tolerance_s = 5;
  int64_t robert_batch_limit = 0;  // 0 = no per-batch limit
  bool robert_bind_window_to_token = false;
  bool robert_filter_self = false;
  int64_t robert_long_validity_days = 8;
  int64_t robert_short_validity_min = 60;
  int64_t robert_sheet_days = 10;

  // DP3T
  int64_t dp3t_ac_freshness_days = 2;
  bool dp3t_release_at_day_end = true;
  int64_t dp3t_max_committed_keys = 14;

  // CWA / GAEN matching
  bool cwa_one_tan_per_token = true;
  int64_t cwa_skew_tolerance_epochs = 12;

  // EFGS
  bool efgs_expiry_agreement = true;
  int64_t efgs_release_delay_hours = 2;

  // Applies a "key=value" override with the external key names
  // (robert.hello_tolerance_s, cwa.one_tan_per_token, ...). Returns false
  // for unknown keys or unparsable values.
  bool ApplyOverride(const std::string& key, const std::string& value);
  bool ApplyOverrides(const std::map<std::string, std::string>& overrides);
};

}  // namespace enslab

#endif  // ENSLAB_CONFIG_H_
