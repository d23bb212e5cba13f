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

#ifndef ENSLAB_PROPCHECK_H_
#define ENSLAB_PROPCHECK_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "enslab/trace.h"

// Evaluates the Soundness and Upload-Authorisation properties over finished
// traces by exhaustive quantifier enumeration, and classifies violations
// against the 27 attack patterns.
namespace enslab::propcheck {

enum class Protocol { kRobert, kDp3t, kCwa };
const char* ProtocolName(Protocol protocol);
std::optional<Protocol> ProtocolFromName(const std::string& name);

enum class Property { kSoundness, kUploadAuthGaen, kUploadAuthRobert };
const char* PropertyName(Property property);

// Soundness witness conditions:
//   a  an HA declared idI contagious over some interval
//   b  the interval spans at most 14 days
//   c  idR and idI shared a place at the claimed exposure epoch
//   d  the exposure day lies inside the interval (start <= day < end)
//   e  idI differs from idR
enum class Cond { kA, kB, kC, kD, kE };
char CondLetter(Cond cond);

// clang-format off
enum class PatternId {
  kA1, kA2, kA3, kA4,
  kB1, kB2, kB3,
  kC1, kC2,
  kX1, kX2, kX3, kX4, kX5, kX6, kX7,
  kY1, kY2, kY3, kY4, kY5, kY6, kY7,
  kZ1, kZ2, kZ3, kZ4,
};
// clang-format on

inline constexpr int kPatternCount = 27;
const char* PatternName(PatternId id);
std::optional<PatternId> PatternFromName(const std::string& name);

struct Violation {
  Property property = Property::kSoundness;
  size_t witness_index = 0;  // index into the trace
  Tick witness_tick;
  std::set<Cond> failed_conditions;  // soundness only
  std::optional<PatternId> pattern;
  std::vector<size_t> evidence;  // supporting event indices
};

enum class CheckError { kTraceSchemaError };
enum class ClassifyError { kUnclassifiedViolation };

Result<std::vector<Violation>, CheckError> CheckSoundness(const Trace& trace,
                                                          Protocol protocol);
Result<std::vector<Violation>, CheckError> CheckUploadAuth(const Trace& trace,
                                                           Protocol protocol);

Result<PatternId, ClassifyError> Classify(const Violation& violation,
                                          const Trace& trace,
                                          Protocol protocol);

struct Report {
  std::vector<Violation> violations;  // patterns filled in where classifiable
  int64_t unclassified = 0;
};

Result<Report, CheckError> CheckAll(const Trace& trace, Protocol protocol);

// One line per violation: property, witness tick, failed conditions,
// pattern, evidence ticks.
std::string FormatViolation(const Violation& violation, const Trace& trace);

}  // namespace enslab::propcheck

#endif  // ENSLAB_PROPCHECK_H_
