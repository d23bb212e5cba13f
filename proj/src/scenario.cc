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

#include "enslab/scenario.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <sstream>

namespace enslab::harness {

const Scenario* FindScenario(const std::string& id) {
  for (const auto& s : AllScenarios()) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<std::string> ListScenarioIds() {
  std::vector<std::string> ids;
  for (const auto& s : AllScenarios()) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool GlobMatch(const std::string& pattern, const std::string& text) {
  // Iterative wildcard match with backtracking over '*'.
  size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() &&
        (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

namespace {

bool ExpectationMet(const Expectation& expect, const RunReport& report,
                    std::string* reason) {
  if (report.unclassified > 0) {
    *reason = "unclassified violation";
    return false;
  }
  switch (expect.kind) {
    case Expectation::Kind::kNoViolation:
    case Expectation::Kind::kMitigated:
      if (!report.violations.empty()) {
        *reason = "unexpected violations";
        return false;
      }
      break;
    case Expectation::Kind::kViolation: {
      bool found = false;
      for (const auto& v : report.violations) {
        if (v.property == expect.property && v.pattern &&
            *v.pattern == expect.pattern) {
          found = true;
          break;
        }
      }
      if (!found) {
        *reason = std::string("expected ") +
                  propcheck::PropertyName(expect.property) + " violation " +
                  propcheck::PatternName(expect.pattern) + " not found";
        return false;
      }
      break;
    }
  }
  if (expect.alarms && report.alarmed_actors.size() !=
                           static_cast<size_t>(*expect.alarms)) {
    std::ostringstream msg;
    msg << "expected " << *expect.alarms << " alarmed phones, got "
        << report.alarmed_actors.size();
    *reason = msg.str();
    return false;
  }
  return true;
}

}  // namespace

RunReport Run(const Scenario& scenario, uint64_t seed,
              const std::string& trace_path,
              const std::map<std::string, std::string>& config_overrides) {
  auto start = std::chrono::steady_clock::now();

  SimConfig config;
  config.ApplyOverrides(scenario.config);
  config.ApplyOverrides(config_overrides);

  World world(config, seed);
  scenario.script(world);

  RunReport report;
  report.scenario_id = scenario.id;
  report.seed = seed;
  report.event_count = static_cast<int64_t>(world.trace().size());
  if (!trace_path.empty()) {
    world.trace().WriteTo(trace_path);
    report.trace_path = trace_path;
  }

  auto checked = propcheck::CheckAll(world.trace(), scenario.protocol);
  if (checked.ok()) {
    report.violations = checked.value().violations;
    report.unclassified = checked.value().unclassified;
    for (const auto& v : report.violations) {
      report.violation_lines.push_back(
          propcheck::FormatViolation(v, world.trace()));
    }
  } else {
    report.fail_reason = "trace schema error";
  }

  for (const auto& e : world.trace().events()) {
    if (e.kind == EventKind::kPClaimAtRisk) {
      report.alarmed_actors.insert(e.actor);
      ++report.claim_count;
    }
  }

  if (report.fail_reason.empty()) {
    report.pass = ExpectationMet(scenario.expect, report, &report.fail_reason);
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

Result<RunReport, HarnessError> RunById(
    const std::string& id, uint64_t seed, const std::string& trace_path,
    const std::map<std::string, std::string>& config_overrides) {
  const Scenario* scenario = FindScenario(id);
  if (scenario == nullptr) return HarnessError::kUnknownScenario;
  SimConfig probe;
  if (!probe.ApplyOverrides(config_overrides)) return HarnessError::kBadConfig;
  return Run(*scenario, seed, trace_path, config_overrides);
}

SuiteReport RunSuite(const std::string& filter, uint64_t seed,
                     const std::string& trace_dir,
                     const std::map<std::string, std::string>& config_overrides,
                     int jobs) {
  auto start = std::chrono::steady_clock::now();
  std::vector<const Scenario*> selected;
  for (const auto& s : AllScenarios()) {
    if (GlobMatch(filter, s.id)) selected.push_back(&s);
  }

  SuiteReport suite;
  suite.reports.resize(selected.size());
  if (jobs < 1) jobs = 1;

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= selected.size()) break;
      std::string trace_path;
      if (!trace_dir.empty()) {
        trace_path = trace_dir + "/" + selected[i]->id + ".trace";
      }
      suite.reports[i] = Run(*selected[i], seed, trace_path, config_overrides);
    }
  };
  std::vector<std::future<void>> pool;
  for (int j = 0; j < jobs; ++j) {
    pool.push_back(std::async(std::launch::async, worker));
  }
  for (auto& f : pool) f.get();

  for (const auto& r : suite.reports) {
    if (!r.pass) suite.all_pass = false;
  }
  suite.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return suite;
}

}  // namespace enslab::harness
