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

#include "enslab/config.h"

#include <cstdlib>

namespace enslab {

namespace {

bool ParseInt(const std::string& value, int64_t* out) {
  char* end = nullptr;
  long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0') return false;
  *out = v;
  return true;
}

bool ParseBool(const std::string& value, bool* out) {
  if (value == "true" || value == "1" || value == "on") {
    *out = true;
    return true;
  }
  if (value == "false" || value == "0" || value == "off") {
    *out = false;
    return true;
  }
  return false;
}

}  // namespace

bool SimConfig::ApplyOverride(const std::string& key,
                              const std::string& value) {
  if (key == "world.epoch_length_s") return ParseInt(value, &time.epoch_length_s);
  if (key == "world.epochs_per_day") return ParseInt(value, &time.epochs_per_day);
  if (key == "robert.hello_tolerance_s")
    return ParseInt(value, &robert_hello_tolerance_s);
  if (key == "robert.batch_limit") return ParseInt(value, &robert_batch_limit);
  if (key == "robert.bind_window_to_token")
    return ParseBool(value, &robert_bind_window_to_token);
  if (key == "robert.filter_self") return ParseBool(value, &robert_filter_self);
  if (key == "robert.long_validity_days")
    return ParseInt(value, &robert_long_validity_days);
  if (key == "robert.short_validity_min")
    return ParseInt(value, &robert_short_validity_min);
  if (key == "robert.sheet_days") return ParseInt(value, &robert_sheet_days);
  if (key == "dp3t.ac_freshness_days")
    return ParseInt(value, &dp3t_ac_freshness_days);
  if (key == "dp3t.release_at_day_end")
    return ParseBool(value, &dp3t_release_at_day_end);
  if (key == "dp3t.max_committed_keys")
    return ParseInt(value, &dp3t_max_committed_keys);
  if (key == "cwa.one_tan_per_token")
    return ParseBool(value, &cwa_one_tan_per_token);
  if (key == "cwa.skew_tolerance_epochs")
    return ParseInt(value, &cwa_skew_tolerance_epochs);
  if (key == "efgs.expiry_agreement")
    return ParseBool(value, &efgs_expiry_agreement);
  if (key == "efgs.release_delay_hours")
    return ParseInt(value, &efgs_release_delay_hours);
  return false;
}

bool SimConfig::ApplyOverrides(
    const std::map<std::string, std::string>& overrides) {
  for (const auto& [k, v] : overrides) {
    if (!ApplyOverride(k, v)) return false;
  }
  return true;
}

}  // namespace enslab
