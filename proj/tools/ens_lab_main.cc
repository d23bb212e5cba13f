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

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "enslab/scenario.h"
#include "json.hpp"

namespace {

using enslab::harness::RunReport;

std::map<std::string, std::string> ParseConfigPairs(
    const std::vector<std::string>& pairs, bool* ok) {
  std::map<std::string, std::string> out;
  *ok = true;
  for (const auto& pair : pairs) {
    auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "bad --config entry (want KEY=VALUE): " << pair << "\n";
      *ok = false;
      continue;
    }
    out[pair.substr(0, eq)] = pair.substr(eq + 1);
  }
  return out;
}

nlohmann::json ReportToJson(const RunReport& report) {
  nlohmann::json j;
  j["scenario"] = report.scenario_id;
  j["seed"] = report.seed;
  j["pass"] = report.pass;
  if (!report.pass) j["fail_reason"] = report.fail_reason;
  j["wall_ms"] = report.wall_ms;
  j["events"] = report.event_count;
  j["alarmed_phones"] = report.alarmed_actors.size();
  if (!report.trace_path.empty()) j["trace"] = report.trace_path;
  nlohmann::json violations = nlohmann::json::array();
  for (size_t i = 0; i < report.violations.size(); ++i) {
    const auto& v = report.violations[i];
    nlohmann::json jv;
    jv["property"] = enslab::propcheck::PropertyName(v.property);
    jv["witness_tick"] = v.witness_tick.ms;
    std::string failed;
    for (auto c : v.failed_conditions) failed += enslab::propcheck::CondLetter(c);
    jv["failed_conditions"] = failed;
    jv["pattern"] = v.pattern ? enslab::propcheck::PatternName(*v.pattern)
                              : "UNCLASSIFIED";
    if (i < report.violation_lines.size()) {
      jv["record"] = report.violation_lines[i];
    }
    violations.push_back(jv);
  }
  j["violations"] = violations;
  return j;
}

void PrintReportLine(const RunReport& report) {
  std::cout << (report.pass ? "[PASS] " : "[FAIL] ") << report.scenario_id
            << "  violations=" << report.violations.size()
            << " alarms=" << report.alarmed_actors.size();
  for (const auto& v : report.violations) {
    std::cout << " "
              << (v.pattern ? enslab::propcheck::PatternName(*v.pattern)
                            : "UNCLASSIFIED");
  }
  if (!report.pass) std::cout << "  (" << report.fail_reason << ")";
  std::cout << "\n";
}

void PrintViolationRecords(const RunReport& report) {
  for (const auto& line : report.violation_lines) {
    std::cout << "  " << line << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ens-lab: exposure notification protocol attack lab"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "list registered scenarios");

  auto* run_cmd = app.add_subcommand("run", "run one scenario");
  std::string run_id;
  uint64_t run_seed = 42;
  std::string trace_out;
  std::vector<std::string> run_config;
  run_cmd->add_option("scenario", run_id, "scenario id")->required();
  run_cmd->add_option("--seed", run_seed, "deterministic seed");
  run_cmd->add_option("--trace-out", trace_out, "write the event trace here");
  run_cmd->add_option("--config", run_config, "KEY=VALUE override")
      ->take_all();

  auto* suite_cmd = app.add_subcommand("suite", "run the scenario suite");
  std::string filter = "*";
  uint64_t suite_seed = 42;
  std::string report_path;
  std::string trace_dir;
  int jobs = 4;
  std::vector<std::string> suite_config;
  suite_cmd->add_option("--filter", filter, "scenario id glob");
  suite_cmd->add_option("--seed", suite_seed, "deterministic seed");
  suite_cmd->add_option("--report", report_path, "write a JSON suite report");
  suite_cmd->add_option("--trace-dir", trace_dir,
                        "write one trace file per scenario");
  suite_cmd->add_option("--jobs", jobs, "parallel workers");
  suite_cmd->add_option("--config", suite_config, "KEY=VALUE override")
      ->take_all();

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    for (const auto& id : enslab::harness::ListScenarioIds()) {
      const auto* s = enslab::harness::FindScenario(id);
      std::cout << id << "  -  " << s->description << "\n";
    }
    return 0;
  }

  if (run_cmd->parsed()) {
    bool ok = true;
    auto overrides = ParseConfigPairs(run_config, &ok);
    if (!ok) return 2;
    auto result =
        enslab::harness::RunById(run_id, run_seed, trace_out, overrides);
    if (!result.ok()) {
      if (result.error() == enslab::harness::HarnessError::kBadConfig) {
        std::cerr << "unknown --config key or bad value\n";
      } else {
        std::cerr << "unknown scenario: " << run_id << "\n";
      }
      return 2;
    }
    const RunReport& report = result.value();
    PrintReportLine(report);
    PrintViolationRecords(report);
    std::cout << ReportToJson(report).dump(2) << "\n";
    return report.pass ? 0 : 1;
  }

  // suite
  bool ok = true;
  auto overrides = ParseConfigPairs(suite_config, &ok);
  if (!ok) return 2;
  enslab::SimConfig probe;
  if (!probe.ApplyOverrides(overrides)) {
    std::cerr << "unknown --config key or bad value\n";
    return 2;
  }
  if (!trace_dir.empty()) {
    std::filesystem::create_directories(trace_dir);
  }
  auto suite =
      enslab::harness::RunSuite(filter, suite_seed, trace_dir, overrides, jobs);
  for (const auto& report : suite.reports) PrintReportLine(report);
  std::cout << suite.reports.size() << " scenarios, "
            << (suite.all_pass ? "all expectations met" : "FAILURES") << " ("
            << suite.wall_ms << " ms)\n";
  if (!report_path.empty()) {
    nlohmann::json j;
    j["seed"] = suite_seed;
    j["filter"] = filter;
    j["all_pass"] = suite.all_pass;
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& report : suite.reports) {
      reports.push_back(ReportToJson(report));
    }
    j["reports"] = reports;
    std::ofstream f(report_path);
    f << j.dump(2) << "\n";
  }
  return suite.all_pass ? 0 : 1;
}
