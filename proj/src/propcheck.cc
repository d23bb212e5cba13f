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

#include "enslab/propcheck.h"

#include <algorithm>
#include <map>
#include <sstream>

namespace enslab::propcheck {

const char* ProtocolName(Protocol protocol) {
  switch (protocol) {
    case Protocol::kRobert: return "robert";
    case Protocol::kDp3t: return "dp3t";
    case Protocol::kCwa: return "cwa";
  }
  return "?";
}

std::optional<Protocol> ProtocolFromName(const std::string& name) {
  if (name == "robert") return Protocol::kRobert;
  if (name == "dp3t") return Protocol::kDp3t;
  if (name == "cwa") return Protocol::kCwa;
  return std::nullopt;
}

const char* PropertyName(Property property) {
  switch (property) {
    case Property::kSoundness: return "Soundness";
    case Property::kUploadAuthGaen: return "UploadAuthGaen";
    case Property::kUploadAuthRobert: return "UploadAuthRobert";
  }
  return "?";
}

char CondLetter(Cond cond) {
  switch (cond) {
    case Cond::kA: return 'a';
    case Cond::kB: return 'b';
    case Cond::kC: return 'c';
    case Cond::kD: return 'd';
    case Cond::kE: return 'e';
  }
  return '?';
}

namespace {

constexpr const char* kPatternNames[kPatternCount] = {
    "A1", "A2", "A3", "A4", "B1", "B2", "B3", "C1", "C2",
    "X1", "X2", "X3", "X4", "X5", "X6", "X7",
    "Y1", "Y2", "Y3", "Y4", "Y5", "Y6", "Y7",
    "Z1", "Z2", "Z3", "Z4",
};

}  // namespace

const char* PatternName(PatternId id) {
  return kPatternNames[static_cast<int>(id)];
}

std::optional<PatternId> PatternFromName(const std::string& name) {
  for (int i = 0; i < kPatternCount; ++i) {
    if (name == kPatternNames[i]) return static_cast<PatternId>(i);
  }
  return std::nullopt;
}

namespace {

bool ValidateSchema(const Trace& trace) {
  for (const auto& e : trace.events()) {
    switch (e.kind) {
      case EventKind::kPClaimAtRisk:
        if (e.actor.empty() || e.day_a < 0 || e.epoch_a < 0) return false;
        break;
      case EventKind::kHAClaimInfected:
        if (e.actor.empty() || e.day_a < 0 || e.day_b < 0) return false;
        break;
      case EventKind::kIsAt:
        if (e.actor.empty() || e.place.empty()) return false;
        break;
      case EventKind::kCreateKey:
      case EventKind::kKeyReleased:
        if (e.digest.empty()) return false;
        break;
      case EventKind::kUploadAccepted:
      case EventKind::kTestPositive:
      case EventKind::kMarkPositive:
        if (e.actor.empty()) return false;
        break;
      case EventKind::kCorrupt:
        if (e.actor.empty() || e.label.empty()) return false;
        break;
      default:
        break;
    }
  }
  return true;
}

struct HaClaim {
  int64_t day_contag;
  int64_t day_test;
  size_t index;
};

// Precomputed views over a trace shared by the checker and the classifier.
struct TraceIndex {
  explicit TraceIndex(const Trace& trace) : trace(trace) {
    for (size_t i = 0; i < trace.size(); ++i) {
      const TraceEvent& e = trace.at(i);
      switch (e.kind) {
        case EventKind::kIsAt:
          universe.insert(e.actor);
          is_at[e.epoch.index][e.actor][e.place] = i;
          break;
        case EventKind::kHAClaimInfected:
          universe.insert(e.actor);
          ha_claims[e.actor].push_back({e.day_a, e.day_b, i});
          break;
        case EventKind::kPhoneInit:
        case EventKind::kCreateKey:
          universe.insert(e.actor);
          break;
        case EventKind::kTestPositive:
          universe.insert(e.actor);
          if (positives.count(e.actor) == 0) positives[e.actor] = i;
          break;
        case EventKind::kPClaimAtRisk:
          universe.insert(e.actor);
          claims.push_back(i);
          break;
        case EventKind::kCorrupt:
          corrupts.push_back(i);
          break;
        case EventKind::kBleWr:
        case EventKind::kBleRd:
          ble.push_back(i);
          break;
        default:
          break;
      }
    }
    // Adversarial channel accesses carry no co-located IsAt.
    for (size_t i : ble) {
      const TraceEvent& e = trace.at(i);
      auto epoch_it = is_at.find(e.epoch.index);
      bool honest = false;
      if (epoch_it != is_at.end()) {
        auto actor_it = epoch_it->second.find(e.actor);
        honest = actor_it != epoch_it->second.end() &&
                 actor_it->second.count(e.place) > 0;
      }
      if (!honest) {
        if (e.kind == EventKind::kBleWr) {
          adversary_writes.push_back(i);
        } else {
          adversary_reads.push_back(i);
        }
      }
    }
  }

  bool IsPositive(const std::string& actor) const {
    return positives.count(actor) > 0;
  }

  const Trace& trace;
  std::set<std::string> universe;
  // epoch -> actor -> place -> first IsAt index
  std::map<int64_t, std::map<std::string, std::map<std::string, size_t>>> is_at;
  std::map<std::string, std::vector<HaClaim>> ha_claims;
  std::map<std::string, size_t> positives;  // first TestPositive
  std::vector<size_t> claims;
  std::vector<size_t> corrupts;
  std::vector<size_t> ble;
  std::vector<size_t> adversary_writes;
  std::vector<size_t> adversary_reads;
};

struct BindingOutcome {
  std::set<Cond> failed;
  std::vector<size_t> evidence;
};

bool BetterThan(const std::set<Cond>& a, const std::set<Cond>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Evaluates all witness bindings for one claim. Returns nullopt when some
// binding satisfies a-e; otherwise the failure set of the best binding
// (fewest failed conditions, ties broken lexicographically over a..e).
std::optional<BindingOutcome> EvaluateClaim(const TraceIndex& index,
                                            const TraceEvent& claim) {
  const std::string& id_r = claim.actor;
  int64_t day_close = claim.day_a;
  int64_t inst_close = claim.epoch_a;

  std::optional<BindingOutcome> best;

  auto epoch_it = index.is_at.find(inst_close);
  const std::map<std::string, std::map<std::string, size_t>>* at_epoch =
      epoch_it == index.is_at.end() ? nullptr : &epoch_it->second;

  auto consider = [&](const std::set<Cond>& failed,
                      std::vector<size_t> evidence) -> bool {
    if (failed.empty()) return true;  // satisfied binding
    if (!best || BetterThan(failed, best->failed)) {
      best = BindingOutcome{failed, std::move(evidence)};
    }
    return false;
  };

  for (const std::string& id_i : index.universe) {
    // Condition c: a shared place at the claimed exposure epoch.
    bool c_ok = false;
    std::vector<size_t> c_evidence;
    if (at_epoch != nullptr) {
      auto r_it = at_epoch->find(id_r);
      auto i_it = at_epoch->find(id_i);
      if (r_it != at_epoch->end() && i_it != at_epoch->end()) {
        for (const auto& [place, r_index] : r_it->second) {
          auto shared = i_it->second.find(place);
          if (shared != i_it->second.end()) {
            c_ok = true;
            c_evidence = {r_index, shared->second};
            break;
          }
        }
      }
    }
    bool e_ok = id_i != id_r;

    auto ha_it = index.ha_claims.find(id_i);
    if (ha_it == index.ha_claims.end() || ha_it->second.empty()) {
      std::set<Cond> failed = {Cond::kA, Cond::kB, Cond::kD};
      if (!c_ok) failed.insert(Cond::kC);
      if (!e_ok) failed.insert(Cond::kE);
      if (consider(failed, c_evidence)) return std::nullopt;
      continue;
    }
    for (const HaClaim& ha : ha_it->second) {
      std::set<Cond> failed;
      if (!Within14Days({ha.day_contag}, {ha.day_test})) failed.insert(Cond::kB);
      if (!(ha.day_contag <= day_close && day_close < ha.day_test)) {
        failed.insert(Cond::kD);
      }
      if (!c_ok) failed.insert(Cond::kC);
      if (!e_ok) failed.insert(Cond::kE);
      std::vector<size_t> evidence = c_evidence;
      evidence.push_back(ha.index);
      if (consider(failed, std::move(evidence))) return std::nullopt;
    }
  }

  if (!best) {
    // No candidate witness exists at all.
    best = BindingOutcome{
        {Cond::kA, Cond::kB, Cond::kC, Cond::kD, Cond::kE}, {}};
  }
  return best;
}

}  // namespace

Result<std::vector<Violation>, CheckError> CheckSoundness(const Trace& trace,
                                                          Protocol protocol) {
  (void)protocol;  // Condition d is day-granular for all three protocols.
  if (!ValidateSchema(trace)) return CheckError::kTraceSchemaError;
  TraceIndex index(trace);
  std::vector<Violation> violations;
  for (size_t i : index.claims) {
    const TraceEvent& claim = trace.at(i);
    auto outcome = EvaluateClaim(index, claim);
    if (!outcome) continue;
    Violation v;
    v.property = Property::kSoundness;
    v.witness_index = i;
    v.witness_tick = claim.tick;
    v.failed_conditions = outcome->failed;
    v.evidence = outcome->evidence;
    violations.push_back(std::move(v));
  }
  return violations;
}

Result<std::vector<Violation>, CheckError> CheckUploadAuth(const Trace& trace,
                                                           Protocol protocol) {
  if (!ValidateSchema(trace)) return CheckError::kTraceSchemaError;
  std::vector<Violation> violations;

  if (protocol == Protocol::kRobert) {
    // Def. 3: an accepted upload attributed to a phone requires that phone
    // to have been diagnosed beforehand.
    std::map<std::string, size_t> positives;
    for (size_t i = 0; i < trace.size(); ++i) {
      const TraceEvent& e = trace.at(i);
      if (e.kind == EventKind::kTestPositive && positives.count(e.actor) == 0) {
        positives[e.actor] = i;
      }
    }
    for (size_t i = 0; i < trace.size(); ++i) {
      const TraceEvent& e = trace.at(i);
      if (e.kind != EventKind::kUploadAccepted) continue;
      auto it = positives.find(e.actor);
      if (it != positives.end() && it->second < i) continue;
      Violation v;
      v.property = Property::kUploadAuthRobert;
      v.witness_index = i;
      v.witness_tick = e.tick;
      violations.push_back(std::move(v));
    }
    return violations;
  }

  // Def. 2: a released key that some phone generated requires that phone to
  // have been diagnosed beforehand. Keys without a CreateKey event (forged
  // by the adversary) are not constrained.
  std::map<std::string, std::vector<std::pair<std::string, size_t>>> creators;
  std::map<std::string, size_t> positives;
  for (size_t i = 0; i < trace.size(); ++i) {
    const TraceEvent& e = trace.at(i);
    if (e.kind == EventKind::kCreateKey) {
      creators[e.digest].emplace_back(e.actor, i);
    } else if (e.kind == EventKind::kTestPositive &&
               positives.count(e.actor) == 0) {
      positives[e.actor] = i;
    }
  }
  for (size_t i = 0; i < trace.size(); ++i) {
    const TraceEvent& e = trace.at(i);
    if (e.kind != EventKind::kKeyReleased) continue;
    auto created = creators.find(e.digest);
    if (created == creators.end()) continue;
    for (const auto& [creator, create_index] : created->second) {
      auto positive = positives.find(creator);
      if (positive != positives.end() && positive->second < i) continue;
      Violation v;
      v.property = Property::kUploadAuthGaen;
      v.witness_index = i;
      v.witness_tick = e.tick;
      v.evidence = {create_index};
      violations.push_back(std::move(v));
    }
  }
  return violations;
}

namespace {

// Classifier view over the trace: corruption labels per target, diagnosis
// set, adversarial channel accesses.
struct ClassifierCtx {
  explicit ClassifierCtx(const Trace& trace) : index(trace) {}

  bool HasCorrupt(const std::string& label) const {
    return !WithLabel(label).empty();
  }
  std::vector<size_t> WithLabel(const std::string& label) const {
    std::vector<size_t> out;
    for (size_t i : index.corrupts) {
      if (index.trace.at(i).label == label) out.push_back(i);
    }
    return out;
  }
  std::vector<size_t> PhoneCorrupts() const {
    static const char* kPhoneLabels[] = {
        "CorruptPhoneKey",        "CorruptPhoneReceived",
        "CorruptPhoneSend",       "CorruptPhoneReceive",
        "CorruptPhoneTestDBRead", "CorruptPhoneTestDBWrite"};
    std::vector<size_t> out;
    for (size_t i : index.corrupts) {
      const std::string& label = index.trace.at(i).label;
      for (const char* candidate : kPhoneLabels) {
        if (label == candidate) {
          out.push_back(i);
          break;
        }
      }
    }
    return out;
  }
  std::vector<size_t> PhoneCorruptsOnPositive() const {
    std::vector<size_t> out;
    for (size_t i : PhoneCorrupts()) {
      if (index.IsPositive(index.trace.at(i).actor)) out.push_back(i);
    }
    return out;
  }
  // Corrupt events with this label whose target is diagnosed.
  std::vector<size_t> WithLabelOnPositive(const std::string& label) const {
    std::vector<size_t> out;
    for (size_t i : WithLabel(label)) {
      if (index.IsPositive(index.trace.at(i).actor)) out.push_back(i);
    }
    return out;
  }
  std::vector<size_t> WithLabelOnNonPositive(const std::string& label) const {
    std::vector<size_t> out;
    for (size_t i : WithLabel(label)) {
      if (!index.IsPositive(index.trace.at(i).actor)) out.push_back(i);
    }
    return out;
  }
  std::vector<size_t> WithLabelOnActor(const std::string& label,
                                       const std::string& actor) const {
    std::vector<size_t> out;
    for (size_t i : WithLabel(label)) {
      if (index.trace.at(i).actor == actor) out.push_back(i);
    }
    return out;
  }
  bool AdversaryWrote() const { return !index.adversary_writes.empty(); }
  bool AdversaryRead() const { return !index.adversary_reads.empty(); }

  TraceIndex index;
};

void Cite(Violation* v, const std::vector<size_t>& events) {
  for (size_t i : events) {
    if (std::find(v->evidence.begin(), v->evidence.end(), i) ==
        v->evidence.end()) {
      v->evidence.push_back(i);
    }
  }
}

bool FailedExactly(const Violation& v, std::initializer_list<Cond> conds) {
  return v.failed_conditions == std::set<Cond>(conds);
}
bool Failed(const Violation& v, Cond cond) {
  return v.failed_conditions.count(cond) > 0;
}

std::optional<PatternId> ClassifyRobertSoundness(Violation* v,
                                                 const ClassifierCtx& ctx) {
  const TraceEvent& claim = ctx.index.trace.at(v->witness_index);

  // X1: only the reflexive binding is missing.
  if (FailedExactly(*v, {Cond::kE})) return PatternId::kX1;

  // X2: real proximity, exposure outside the declared contagious window,
  // records uploaded by a compromised infected phone.
  if (Failed(*v, Cond::kD) && !Failed(*v, Cond::kC)) {
    auto who = ctx.PhoneCorruptsOnPositive();
    if (!who.empty()) {
      Cite(v, who);
      return PatternId::kX2;
    }
  }

  // X6: ephemerals reconstructed from the back end's secret and federation
  // keys.
  if (ctx.HasCorrupt("CorruptBState") &&
      ctx.HasCorrupt("CorruptBFederationKey")) {
    Cite(v, ctx.WithLabel("CorruptBState"));
    Cite(v, ctx.WithLabel("CorruptBFederationKey"));
    return PatternId::kX6;
  }

  // X7: the victim's registration keys leaked and its pre-HELLO message was
  // captured from the back end.
  {
    auto victim_key = ctx.WithLabelOnActor("CorruptPhoneKey", claim.actor);
    if (!victim_key.empty() && ctx.HasCorrupt("CorruptBSend")) {
      Cite(v, victim_key);
      Cite(v, ctx.WithLabel("CorruptBSend"));
      return PatternId::kX7;
    }
  }

  // X4: compromised infected phone uploads ephemerals of the attacker's
  // choice; no Bluetooth transmission by the adversary.
  {
    auto who = ctx.PhoneCorruptsOnPositive();
    if (!who.empty() && !ctx.AdversaryWrote()) {
      Cite(v, who);
      Cite(v, ctx.index.adversary_reads);
      return PatternId::kX4;
    }
  }

  // X3: relay over the Bluetooth channel; the infected phone stays honest.
  if (ctx.AdversaryWrote() && ctx.PhoneCorruptsOnPositive().empty() &&
      !ctx.HasCorrupt("CorruptBState")) {
    Cite(v, ctx.index.adversary_reads);
    Cite(v, ctx.index.adversary_writes);
    return PatternId::kX3;
  }

  // X5: a compromised back end pushes the risk notification directly.
  if (ctx.HasCorrupt("CorruptBSend")) {
    Cite(v, ctx.WithLabel("CorruptBSend"));
    return PatternId::kX5;
  }

  return std::nullopt;
}

std::optional<PatternId> ClassifyDp3tSoundness(Violation* v,
                                               const ClassifierCtx& ctx) {
  // Y1: malicious upload of an out-of-window key by the infected phone.
  if (Failed(*v, Cond::kD) && !Failed(*v, Cond::kC) && !ctx.AdversaryWrote()) {
    auto who = ctx.PhoneCorruptsOnPositive();
    if (!who.empty()) {
      Cite(v, who);
      return PatternId::kY1;
    }
  }

  // Y5: a non-diagnosed phone's day key disclosed and maliciously uploaded.
  {
    auto leak = ctx.WithLabelOnNonPositive("CorruptPhoneKey");
    if (!leak.empty() && ctx.HasCorrupt("CorruptHAState")) {
      Cite(v, leak);
      Cite(v, ctx.WithLabel("CorruptHAState"));
      return PatternId::kY5;
    }
  }

  // Y4: forged day keys, broadcast and maliciously uploaded.
  if (ctx.HasCorrupt("CorruptHAState") && ctx.AdversaryWrote() &&
      !ctx.HasCorrupt("CorruptPhoneKey")) {
    Cite(v, ctx.WithLabel("CorruptHAState"));
    Cite(v, ctx.index.adversary_writes);
    return PatternId::kY4;
  }

  // Y6: real proximity; the sender's day key and the back end's signing key
  // leaked, notification pushed without any upload.
  if (ctx.HasCorrupt("CorruptBState") && ctx.HasCorrupt("CorruptPhoneKey") &&
      !ctx.AdversaryWrote()) {
    Cite(v, ctx.WithLabel("CorruptBState"));
    Cite(v, ctx.WithLabel("CorruptPhoneKey"));
    return PatternId::kY6;
  }

  // Y7: forged ephemerals broadcast, back end compromised to notify.
  if (ctx.HasCorrupt("CorruptBState") && ctx.AdversaryWrote() &&
      !ctx.HasCorrupt("CorruptPhoneKey")) {
    Cite(v, ctx.WithLabel("CorruptBState"));
    Cite(v, ctx.index.adversary_writes);
    return PatternId::kY7;
  }

  // Y2: the infected phone's day key disclosed, ephemerals constructed and
  // broadcast by the adversary.
  {
    auto leak = ctx.WithLabelOnPositive("CorruptPhoneKey");
    if (!leak.empty() && ctx.AdversaryWrote()) {
      Cite(v, leak);
      Cite(v, ctx.index.adversary_writes);
      return PatternId::kY2;
    }
  }

  // Y3: same-day replay of an observed ephemeral.
  if (ctx.AdversaryWrote() && !ctx.HasCorrupt("CorruptPhoneKey") &&
      !ctx.HasCorrupt("CorruptHAState") && !ctx.HasCorrupt("CorruptBState")) {
    Cite(v, ctx.index.adversary_reads);
    Cite(v, ctx.index.adversary_writes);
    return PatternId::kY3;
  }

  return std::nullopt;
}

std::optional<PatternId> ClassifyCwaSoundness(Violation* v,
                                              const ClassifierCtx& ctx) {
  // Z3: a phone's day key disclosed and maliciously uploaded (rebroadcast
  // optional).
  if (ctx.HasCorrupt("CorruptPhoneKey")) {
    Cite(v, ctx.WithLabel("CorruptPhoneKey"));
    return PatternId::kZ3;
  }

  // Z2: forged day keys broadcast and maliciously uploaded.
  if (!ctx.WithLabelOnPositive("CorruptPhoneSend").empty() &&
      ctx.AdversaryWrote()) {
    Cite(v, ctx.WithLabelOnPositive("CorruptPhoneSend"));
    Cite(v, ctx.index.adversary_writes);
    return PatternId::kZ2;
  }

  // Z4: forged ephemerals broadcast, back end compromised to notify.
  if (ctx.HasCorrupt("CorruptBState") && ctx.AdversaryWrote()) {
    Cite(v, ctx.WithLabel("CorruptBState"));
    Cite(v, ctx.index.adversary_writes);
    return PatternId::kZ4;
  }

  // Z1: same-day replay of an observed or published ephemeral.
  if (ctx.AdversaryWrote() && !ctx.HasCorrupt("CorruptBState") &&
      ctx.PhoneCorrupts().empty()) {
    Cite(v, ctx.index.adversary_reads);
    Cite(v, ctx.index.adversary_writes);
    return PatternId::kZ1;
  }

  return std::nullopt;
}

std::optional<PatternId> ClassifyRobertUploadAuth(Violation* v,
                                                  const ClassifierCtx& ctx) {
  // A1: the QR code was captured from a diagnosed phone's channel.
  {
    auto shared = ctx.WithLabelOnPositive("CorruptPhoneReceive");
    if (!shared.empty()) {
      Cite(v, shared);
      return PatternId::kA1;
    }
  }
  // A2: the back end leaked an unused QR code from its list.
  if (ctx.HasCorrupt("CorruptQRList")) {
    Cite(v, ctx.WithLabel("CorruptQRList"));
    return PatternId::kA2;
  }
  // A3: a QR code extracted from an in-flight upload message.
  if (ctx.HasCorrupt("CorruptBReceive")) {
    Cite(v, ctx.WithLabel("CorruptBReceive"));
    return PatternId::kA3;
  }
  // A4: fresh QR codes minted from the back end's secret.
  if (ctx.HasCorrupt("CorruptBState")) {
    Cite(v, ctx.WithLabel("CorruptBState"));
    return PatternId::kA4;
  }
  return std::nullopt;
}

std::optional<PatternId> ClassifyDp3tUploadAuth(Violation* v,
                                                const ClassifierCtx& ctx) {
  // B1: disclosed day key plus leaked HA signing key.
  if (ctx.HasCorrupt("CorruptHAState") && ctx.HasCorrupt("CorruptPhoneKey")) {
    Cite(v, ctx.WithLabel("CorruptHAState"));
    Cite(v, ctx.WithLabel("CorruptPhoneKey"));
    return PatternId::kB1;
  }
  // B2: compromised HA authorises the original phone with a fake result.
  if (ctx.HasCorrupt("CorruptHASend")) {
    Cite(v, ctx.WithLabel("CorruptHASend"));
    return PatternId::kB2;
  }
  // B3: keys substituted on a compromised phone before testing.
  if (ctx.HasCorrupt("CorruptPhoneTestDBWrite")) {
    Cite(v, ctx.WithLabel("CorruptPhoneTestDBWrite"));
    return PatternId::kB3;
  }
  return std::nullopt;
}

std::optional<PatternId> ClassifyCwaUploadAuth(Violation* v,
                                               const ClassifierCtx& ctx) {
  // C1: another phone's disclosed TEK uploaded with a valid TAN.
  if (ctx.HasCorrupt("CorruptPhoneKey")) {
    Cite(v, ctx.WithLabel("CorruptPhoneKey"));
    return PatternId::kC1;
  }
  // C2: the verification server's phone channel compromised.
  if (ctx.HasCorrupt("CorruptVSReceiveFromPhone") ||
      ctx.HasCorrupt("CorruptVSSendToPhone")) {
    Cite(v, ctx.WithLabel("CorruptVSReceiveFromPhone"));
    Cite(v, ctx.WithLabel("CorruptVSSendToPhone"));
    return PatternId::kC2;
  }
  return std::nullopt;
}

}  // namespace

Result<PatternId, ClassifyError> Classify(const Violation& violation,
                                          const Trace& trace,
                                          Protocol protocol) {
  ClassifierCtx ctx(trace);
  Violation scratch = violation;
  std::optional<PatternId> id;
  if (violation.property == Property::kSoundness) {
    switch (protocol) {
      case Protocol::kRobert:
        id = ClassifyRobertSoundness(&scratch, ctx);
        break;
      case Protocol::kDp3t:
        id = ClassifyDp3tSoundness(&scratch, ctx);
        break;
      case Protocol::kCwa:
        id = ClassifyCwaSoundness(&scratch, ctx);
        break;
    }
  } else if (violation.property == Property::kUploadAuthRobert) {
    id = ClassifyRobertUploadAuth(&scratch, ctx);
  } else {
    id = protocol == Protocol::kDp3t ? ClassifyDp3tUploadAuth(&scratch, ctx)
                                     : ClassifyCwaUploadAuth(&scratch, ctx);
  }
  if (!id) return ClassifyError::kUnclassifiedViolation;
  return *id;
}

Result<Report, CheckError> CheckAll(const Trace& trace, Protocol protocol) {
  Report report;
  auto soundness = CheckSoundness(trace, protocol);
  if (!soundness.ok()) return soundness.error();
  auto upload = CheckUploadAuth(trace, protocol);
  if (!upload.ok()) return upload.error();
  report.violations = soundness.value();
  report.violations.insert(report.violations.end(), upload.value().begin(),
                           upload.value().end());

  ClassifierCtx ctx(trace);
  for (auto& v : report.violations) {
    std::optional<PatternId> id;
    if (v.property == Property::kSoundness) {
      switch (protocol) {
        case Protocol::kRobert:
          id = ClassifyRobertSoundness(&v, ctx);
          break;
        case Protocol::kDp3t:
          id = ClassifyDp3tSoundness(&v, ctx);
          break;
        case Protocol::kCwa:
          id = ClassifyCwaSoundness(&v, ctx);
          break;
      }
    } else if (v.property == Property::kUploadAuthRobert) {
      id = ClassifyRobertUploadAuth(&v, ctx);
    } else {
      id = protocol == Protocol::kDp3t ? ClassifyDp3tUploadAuth(&v, ctx)
                                       : ClassifyCwaUploadAuth(&v, ctx);
    }
    if (id) {
      v.pattern = *id;
    } else {
      ++report.unclassified;
    }
  }
  return report;
}

std::string FormatViolation(const Violation& v, const Trace& trace) {
  std::ostringstream out;
  out << "property=" << PropertyName(v.property)
      << " witness_tick=" << v.witness_tick.ms;
  out << " failed=";
  if (v.failed_conditions.empty()) {
    out << "-";
  } else {
    for (Cond c : v.failed_conditions) out << CondLetter(c);
  }
  out << " pattern=" << (v.pattern ? PatternName(*v.pattern) : "UNCLASSIFIED");
  out << " evidence=";
  if (v.evidence.empty()) {
    out << "-";
  } else {
    bool first = true;
    for (size_t i : v.evidence) {
      if (!first) out << ",";
      first = false;
      out << trace.at(i).tick.ms;
    }
  }
  return out.str();
}

}  // namespace enslab::propcheck
