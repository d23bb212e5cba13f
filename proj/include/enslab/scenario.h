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

#ifndef ENSLAB_SCENARIO_H_
#define ENSLAB_SCENARIO_H_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "enslab/propcheck.h"
#include "enslab/world.h"

// Scenario library and runner: honest baselines, the 27 attack scripts,
// mitigation variants and the comparative group scenarios.
namespace enslab::harness {

struct Expectation {
  enum class Kind { kNoViolation, kViolation, kMitigated };
  Kind kind = Kind::kNoViolation;
  propcheck::Property property = propcheck::Property::kSoundness;
  propcheck::PatternId pattern = propcheck::PatternId::kX1;
  std::string mitigation_flag;  // documents which flag makes it safe
  std::optional<int64_t> alarms;  // distinct phones with a risk claim

  static Expectation None(std::optional<int64_t> alarms = std::nullopt) {
    Expectation e;
    e.kind = Kind::kNoViolation;
    e.alarms = alarms;
    return e;
  }
  static Expectation Attack(propcheck::Property property,
                            propcheck::PatternId pattern,
                            std::optional<int64_t> alarms = std::nullopt) {
    Expectation e;
    e.kind = Kind::kViolation;
    e.property = property;
    e.pattern = pattern;
    e.alarms = alarms;
    return e;
  }
  static Expectation Mitigated(std::string flag) {
    Expectation e;
    e.kind = Kind::kMitigated;
    e.mitigation_flag = std::move(flag);
    return e;
  }
};

struct Scenario {
  std::string id;
  propcheck::Protocol protocol = propcheck::Protocol::kRobert;
  std::string description;
  std::map<std::string, std::string> config;
  Expectation expect;
  std::function<void(World&)> script;
};

struct RunReport {
  std::string scenario_id;
  uint64_t seed = 0;
  std::string trace_path;
  std::vector<propcheck::Violation> violations;
  // One formatted record per violation: property, witness tick, failed
  // conditions, pattern, evidence ticks.
  std::vector<std::string> violation_lines;
  int64_t unclassified = 0;
  bool pass = false;
  std::string fail_reason;
  double wall_ms = 0;
  std::set<std::string> alarmed_actors;
  int64_t claim_count = 0;
  int64_t event_count = 0;
};

enum class HarnessError { kUnknownScenario, kBadConfig };

const std::vector<Scenario>& AllScenarios();
const Scenario* FindScenario(const std::string& id);
std::vector<std::string> ListScenarioIds();  // sorted

// Shell-style glob over scenario ids ('*' and '?'). An empty pattern
// matches nothing.
bool GlobMatch(const std::string& pattern, const std::string& text);

RunReport Run(const Scenario& scenario, uint64_t seed,
              const std::string& trace_path,
              const std::map<std::string, std::string>& config_overrides);

Result<RunReport, HarnessError> RunById(
    const std::string& id, uint64_t seed, const std::string& trace_path,
    const std::map<std::string, std::string>& config_overrides);

struct SuiteReport {
  std::vector<RunReport> reports;
  bool all_pass = true;
  double wall_ms = 0;
};

// Runs every scenario whose id matches the filter; scenarios execute in a
// worker pool, each with its own world. trace_dir may be empty.
SuiteReport RunSuite(const std::string& filter, uint64_t seed,
                     const std::string& trace_dir,
                     const std::map<std::string, std::string>& config_overrides,
                     int jobs = 4);

}  // namespace enslab::harness

#endif  // ENSLAB_SCENARIO_H_
