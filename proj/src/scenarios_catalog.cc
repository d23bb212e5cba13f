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

#include <cstring>
#include <memory>

#include "enslab/adversary.h"
#include "enslab/cwa.h"
#include "enslab/dp3t.h"
#include "enslab/gaen.h"
#include "enslab/robert.h"
#include "enslab/scenario.h"

// The scenario library: one honest baseline per protocol, one scenario per
// attack pattern, mitigation variants and the comparative group scripts.
// Scripts are deterministic actor programs; per (scenario, seed) the trace
// is bit-identical.
namespace enslab::harness {

namespace {

using propcheck::PatternId;
using propcheck::Property;
using propcheck::Protocol;

// Moves the clock to `second_of_epoch` seconds into the given epoch of the
// given day. Scripts park actions mid-epoch so event-tick padding never
// strays across a boundary.
void AtDayEpoch(World& w, int64_t day, int64_t epoch_in_day,
                int64_t second_of_epoch = 30) {
  w.AdvanceToDayTime(day, epoch_in_day * w.config().time.epoch_length_s +
                            second_of_epoch);
}

Tick TickAtDayEpoch(const World& w, int64_t day, int64_t epoch_in_day,
                    int64_t second_of_epoch = 30) {
  return Tick{(day * w.config().time.day_length_s() +
               epoch_in_day * w.config().time.epoch_length_s +
               second_of_epoch) *
              1000};
}

int64_t UnixEpochIndex(const World& w, int64_t day, int64_t epoch_in_day) {
  return day * w.config().time.epochs_per_day + epoch_in_day;
}

// ---------------------------------------------------------------------------
// ROBERT rig

struct RobertRig {
  World& w;
  robert::RobertBackend backend;
  robert::RobertHealthAuthority ha;
  std::map<std::string, std::unique_ptr<robert::RobertPhone>> phones;

  explicit RobertRig(World& world, std::string country = "FR",
                     uint8_t cc = 0x01)
      : w(world), backend(&world, std::move(country), cc, 0),
        ha(&world, &backend) {}

  robert::RobertPhone& Phone(const std::string& name) {
    auto it = phones.find(name);
    if (it != phones.end()) return *it->second;
    auto phone = std::make_unique<robert::RobertPhone>(
        &w, name, backend.country_name());
    phone->Register(&backend);
    int64_t horizon = 17 * w.config().time.epochs_per_day;
    auto pre = backend.ProvisionEbids(phone->id(), 0, horizon);
    phone->InstallPreHello(pre.value());
    auto& ref = *phone;
    phones.emplace(name, std::move(phone));
    return ref;
  }
};

// One-directional contact: sender broadcasts, receiver scans the same cell.
void RobertContact(World& w, robert::RobertPhone& sender,
                   robert::RobertPhone& receiver, const std::string& place) {
  w.SetPlace(sender.name(), place);
  w.SetPlace(receiver.name(), place);
  sender.BroadcastHello(place);
  receiver.ScanAndStore(place);
}

void HonestRobertUpload(RobertRig& rig, robert::RobertPhone& phone,
                        const robert::QrCode& qr, int64_t window_start,
                        int64_t window_end) {
  auto records = phone.RecordsInWindow(window_start, window_end);
  auto msg = phone.BuildUpload(qr, records, window_start, window_end);
  rig.backend.ProcessUpload(msg, phone.name(), phone.id());
}

// ---------------------------------------------------------------------------
// DP3T rig

struct Dp3tRig {
  World& w;
  dp3t::Dp3tHealthAuthority ha;
  dp3t::Dp3tBackend backend;
  std::map<std::string, std::unique_ptr<dp3t::Dp3tPhone>> phones;

  explicit Dp3tRig(World& world, std::string country = "DE")
      : w(world), ha(&world, country),
        backend(&world, country, ha.public_key()) {}

  dp3t::Dp3tPhone& Phone(const std::string& name) {
    auto it = phones.find(name);
    if (it != phones.end()) return *it->second;
    auto phone =
        std::make_unique<dp3t::Dp3tPhone>(&w, name, backend.country());
    auto& ref = *phone;
    phones.emplace(name, std::move(phone));
    return ref;
  }
};

// ---------------------------------------------------------------------------
// CWA rig

struct CwaRig {
  World& w;
  cwa::VerificationServer vs;
  cwa::CwaBackend backend;
  cwa::CwaTestCenter tc;
  std::map<std::string, std::unique_ptr<cwa::CwaPhone>> phones;

  explicit CwaRig(World& world, std::string country = "DE")
      : w(world), vs(&world, country), backend(&world, country, &vs),
        tc(&world, &vs) {}

  cwa::CwaPhone& Phone(const std::string& name) {
    auto it = phones.find(name);
    if (it != phones.end()) return *it->second;
    auto phone = std::make_unique<cwa::CwaPhone>(&w, name, backend.country());
    auto& ref = *phone;
    phones.emplace(name, std::move(phone));
    return ref;
  }

  // guid issuance, registration, lab result, poll and TAN in one step.
  Bytes DiagnosePositive(cwa::CwaPhone& phone, int64_t window_start,
                         int64_t window_end) {
    Bytes guid = tc.IssueGuid();
    phone.ScanGuid(guid);
    phone.RegisterWithVs(&vs);
    tc.RecordPositive(phone.name(), guid, window_start, window_end);
    phone.Poll(&vs);
    return phone.ObtainTan(&vs).value();
  }
};

void GaenContact(World& w, gaen::GaenPhone& sender, gaen::GaenPhone& receiver,
                 const std::string& place) {
  w.SetPlace(sender.name(), place);
  w.SetPlace(receiver.name(), place);
  sender.Broadcast(place);
  receiver.Scan(place);
}

gaen::Tek TekFromReleased(const gaen::ReleasedKey& key) {
  gaen::Tek tek;
  std::memcpy(tek.key.data(), key.tek.data(), 16);
  tek.day = key.day;
  return tek;
}

// ---------------------------------------------------------------------------
// Scenarios

std::vector<Scenario> BuildCatalog() {
  std::vector<Scenario> all;
  auto add = [&](Scenario s) { all.push_back(std::move(s)); };

  // ===== Honest baselines =====

  add({"honest.robert", Protocol::kRobert,
       "registration, broadcast, diagnosis, authorised upload, notification",
       {}, Expectation::None(1), [](World& w) {
         RobertRig rig(w);
         auto& infected = rig.Phone("I");
         auto& contact = rig.Phone("R");
         AtDayEpoch(w, 0, 3);
         RobertContact(w, contact, infected, "q1");
         AtDayEpoch(w, 2, 3);
         auto qr = rig.ha.Diagnose("I", 0, 2);
         HonestRobertUpload(rig, infected, qr, 0, 2);
         AtDayEpoch(w, 2, 4);
         contact.RequestStatus();
       }});

  add({"honest.dp3t", Protocol::kDp3t,
       "keygen, broadcast, commitment, diagnosis, upload, on-device match",
       {}, Expectation::None(1), [](World& w) {
         Dp3tRig rig(w);
         auto& infected = rig.Phone("I");
         auto& contact = rig.Phone("R");
         AtDayEpoch(w, 0, 3);
         GaenContact(w, infected, contact, "q1");
         AtDayEpoch(w, 1, 3);
         infected.CommitKeys(&rig.ha, {0});
         AtDayEpoch(w, 2, 3);
         auto acs = rig.ha.DiagnoseAndSign("I", 0, 2);
         infected.StoreAuthCodes(acs.value());
         infected.UploadKeys(&rig.backend);
         AtDayEpoch(w, 2, 4);
         contact.RunMatching(rig.backend.FetchForPhone("R"),
                             rig.backend.operator_public_key(),
                             gaen::MatchMode::kDp3t, 0);
       }});

  add({"honest.cwa", Protocol::kCwa,
       "keygen, broadcast, guid/regToken/TAN authorisation, upload, match",
       {}, Expectation::None(1), [](World& w) {
         CwaRig rig(w);
         auto& infected = rig.Phone("I");
         auto& contact = rig.Phone("R");
         AtDayEpoch(w, 0, 3);
         GaenContact(w, infected, contact, "q1");
         AtDayEpoch(w, 1, 3);
         Bytes guid = rig.tc.IssueGuid();
         infected.ScanGuid(guid);
         infected.RegisterWithVs(&rig.vs);
         AtDayEpoch(w, 2, 3);
         rig.tc.RecordPositive("I", guid, 0, 2);
         infected.Poll(&rig.vs);
         infected.ObtainTan(&rig.vs);
         infected.UploadOwnTeks(&rig.backend, {});
         AtDayEpoch(w, 2, 4);
         contact.RunMatching(rig.backend.FetchKeys(),
                             rig.backend.operator_public_key(),
                             gaen::MatchMode::kCwa,
                             w.config().cwa_skew_tolerance_epochs);
       }});

  // ===== ROBERT upload authorisation (A1-A4) =====

  // A1: an infected phone shares its QR code; the attacker uploads
  // observed ephemerals through another phone.
  add({"robert.A1", Protocol::kRobert, "stolen QR code from infected phone",
       {}, Expectation::Attack(Property::kUploadAuthRobert, PatternId::kA1),
       [](World& w) {
         RobertRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("V");
         rig.Phone("I");
         auto& mule = rig.Phone("M");
         AtDayEpoch(w, 0, 3);
         w.SetPlace("V", "p1");
         victim.BroadcastHello("p1");
         auto observed = adv.BleRead("p1");
         Tick observed_at = w.now();
         AtDayEpoch(w, 2, 3);
         auto qr = rig.ha.Diagnose("I", 0, 2);
         adv.InterceptQrDelivery("I", qr);
         robert::UploadMessage msg;
         msg.qr = qr;
         msg.window_start_day = 0;
         msg.window_end_day = 2;
         msg.records.push_back({observed[0], observed_at});
         adv.UploadAsPhone(rig.backend, "M", msg, mule.id());
       }});

  // A2: the back end's list of valid QR codes leaks.
  add({"robert.A2", Protocol::kRobert, "QR sheet leaked from back end", {},
       Expectation::Attack(Property::kUploadAuthRobert, PatternId::kA2),
       [](World& w) {
         RobertRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("V");
         AtDayEpoch(w, 0, 3);
         w.SetPlace("V", "p1");
         victim.BroadcastHello("p1");
         auto observed = adv.BleRead("p1");
         Tick observed_at = w.now();
         rig.ha.IssueSheet(0);
         AtDayEpoch(w, 2, 3);
         auto qr = adv.StealUnusedQr(rig.backend);
         robert::UploadMessage msg;
         msg.qr = qr;
         msg.window_start_day = 0;
         msg.window_end_day = 2;
         msg.records.push_back({observed[0], observed_at});
         rig.backend.ProcessUpload(msg, adv.name(), std::nullopt);
       }});

  // A3: an honest upload message is captured in flight and its QR reused.
  add({"robert.A3", Protocol::kRobert, "QR captured from in-flight upload",
       {}, Expectation::Attack(Property::kUploadAuthRobert, PatternId::kA3),
       [](World& w) {
         RobertRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("V");
         auto& infected = rig.Phone("I");
         AtDayEpoch(w, 0, 3);
         RobertContact(w, victim, infected, "p1");
         AtDayEpoch(w, 2, 3);
         auto qr = rig.ha.Diagnose("I", 0, 2);
         auto honest = infected.BuildUpload(qr, infected.RecordsInWindow(0, 2),
                                            0, 2);
         // The message is tapped and blocked; it never reaches the back end.
         auto captured = adv.CaptureUploadInFlight("FR", honest);
         rig.backend.ProcessUpload(captured, adv.name(), std::nullopt);
       }});

  // A4: back-end state compromise lets the attacker mint fresh QR codes.
  add({"robert.A4", Protocol::kRobert, "QR codes minted from back-end secret",
       {}, Expectation::Attack(Property::kUploadAuthRobert, PatternId::kA4),
       [](World& w) {
         RobertRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("V");
         AtDayEpoch(w, 0, 3);
         w.SetPlace("V", "p1");
         victim.BroadcastHello("p1");
         auto observed = adv.BleRead("p1");
         Tick observed_at = w.now();
         AtDayEpoch(w, 2, 3);
         adv.StealRobertServerState(rig.backend);
         auto qr = adv.MintRobertQr(rig.backend.qr_mint_key(), 0x01,
                                    robert::QrKind::kLong, 2, 2, 2,
                                    w.config().robert_bind_window_to_token);
         robert::UploadMessage msg;
         msg.qr = qr.value();
         msg.window_start_day = 2;
         msg.window_end_day = 2;
         msg.records.push_back({observed[0], observed_at});
         rig.backend.ProcessUpload(msg, adv.name(), std::nullopt);
       }});

  // ===== ROBERT soundness (X1-X7) =====

  // X1: reflection; a phone registers its own broadcast as an exposure.
  add({"robert.X1", Protocol::kRobert, "reflection: own broadcast uploaded",
       {}, Expectation::Attack(Property::kSoundness, PatternId::kX1, 1),
       [](World& w) {
         RobertRig rig(w);
         auto& infected = rig.Phone("I");
         AtDayEpoch(w, 0, 3);
         w.SetPlace("I", "q1");
         infected.BroadcastHello("q1");
         infected.ScanAndStore("q1");  // scheduled self-reception
         AtDayEpoch(w, 2, 3);
         auto qr = rig.ha.Diagnose("I", 0, 2);
         HonestRobertUpload(rig, infected, qr, 0, 2);
         AtDayEpoch(w, 2, 4);
         infected.RequestStatus();
       }});

  add({"robert.X1.mitigated", Protocol::kRobert,
       "reflection removed by server-side self-filter",
       {{"robert.filter_self", "true"}},
       Expectation::Mitigated("robert.filter_self"), [](World& w) {
         RobertRig rig(w);
         auto& infected = rig.Phone("I");
         AtDayEpoch(w, 0, 3);
         w.SetPlace("I", "q1");
         infected.BroadcastHello("q1");
         infected.ScanAndStore("q1");
         AtDayEpoch(w, 2, 3);
         auto qr = rig.ha.Diagnose("I", 0, 2);
         HonestRobertUpload(rig, infected, qr, 0, 2);
         AtDayEpoch(w, 2, 4);
         infected.RequestStatus();
       }});

  // X2: the contagious window is not authenticated by the token; records
  // from outside it are uploaded.
  auto x2_script = [](World& w) {
    RobertRig rig(w);
    Adversary adv(&w);
    auto& infected = rig.Phone("I");
    auto& contact = rig.Phone("R");
    AtDayEpoch(w, 0, 3);
    RobertContact(w, contact, infected, "q1");
    AtDayEpoch(w, 9, 3);
    auto qr = rig.ha.Diagnose("I", 8, 9);  // window excludes day 0
    auto msg = robert::MakeUploadMessage(qr, infected.RecordsInWindow(0, 0),
                                         8, 9);
    adv.UploadAsPhone(rig.backend, "I", msg, infected.id());
    AtDayEpoch(w, 9, 4);
    contact.RequestStatus();
  };
  add({"robert.X2", Protocol::kRobert,
       "upload outside the declared contagious window", {},
       Expectation::Attack(Property::kSoundness, PatternId::kX2, 1),
       x2_script});
  add({"robert.X2.mitigated", Protocol::kRobert,
       "window bound into the signed token",
       {{"robert.bind_window_to_token", "true"}},
       Expectation::Mitigated("robert.bind_window_to_token"), x2_script});

  // X3: ephemerals relayed to another place in the same epoch.
  add({"robert.X3", Protocol::kRobert, "relay to an infected phone", {},
       Expectation::Attack(Property::kSoundness, PatternId::kX3, 1),
       [](World& w) {
         RobertRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("V");
         auto& infected = rig.Phone("I");
         AtDayEpoch(w, 0, 3);
         w.SetPlace("V", "p1");
         victim.BroadcastHello("p1");
         auto observed = adv.BleRead("p1");
         adv.BleWrite("p2", observed[0]);
         w.SetPlace("I", "p2");
         infected.ScanAndStore("p2");
         AtDayEpoch(w, 2, 3);
         auto qr = rig.ha.Diagnose("I", 0, 2);
         HonestRobertUpload(rig, infected, qr, 0, 2);
         AtDayEpoch(w, 2, 4);
         victim.RequestStatus();
       }});

  // X4: as X3, but the infected phone is compromised and uploads the
  // observations directly; the adversary never transmits.
  add({"robert.X4", Protocol::kRobert,
       "passively observed ephemerals uploaded by compromised infected phone",
       {}, Expectation::Attack(Property::kSoundness, PatternId::kX4, 1),
       [](World& w) {
         RobertRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("V");
         auto& infected = rig.Phone("I");
         AtDayEpoch(w, 0, 3);
         w.SetPlace("V", "p1");
         victim.BroadcastHello("p1");
         auto observed = adv.BleRead("p1");
         Tick observed_at = w.now();
         AtDayEpoch(w, 2, 3);
         auto qr = rig.ha.Diagnose("I", 0, 2);
         robert::UploadMessage msg;
         msg.qr = qr;
         msg.window_start_day = 0;
         msg.window_end_day = 2;
         msg.records.push_back({observed[0], observed_at});
         adv.UploadAsPhone(rig.backend, "I", msg, infected.id());
         AtDayEpoch(w, 2, 4);
         victim.RequestStatus();
       }});

  // X5: a compromised back end notifies an arbitrary phone.
  add({"robert.X5", Protocol::kRobert, "false risk notification from back end",
       {}, Expectation::Attack(Property::kSoundness, PatternId::kX5, 1),
       [](World& w) {
         RobertRig rig(w);
         Adversary adv(&w);
         auto& target = rig.Phone("R");
         AtDayEpoch(w, 0, 3);
         adv.ForceRiskNotification("FR", target, w.current_day(),
                                   w.current_epoch());
       }});

  // X6: server and federation keys leaked; ephemerals reconstructed
  // without ever observing them.
  add({"robert.X6", Protocol::kRobert,
       "ephemerals reconstructed from leaked back-end keys", {},
       Expectation::Attack(Property::kSoundness, PatternId::kX6, 1),
       [](World& w) {
         RobertRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("V");
         auto& infected = rig.Phone("I");
         AtDayEpoch(w, 2, 3);
         auto server_key = adv.StealRobertServerState(rig.backend);
         auto federation_key = adv.StealFederationKey(rig.backend);
         auto table = adv.StealIdTable(rig.backend);
         crypto::MacKey victim_auth{};
         for (const auto& [id, auth] : table) {
           if (id == victim.id()) victim_auth = auth;
         }
         Tick claimed = TickAtDayEpoch(w, 0, 3);
         auto hello = adv.MintRobertHello(
             server_key, federation_key, 0x01, 3, victim.id(), victim_auth,
             TruncatedTimestamp16(claimed));
         auto qr = rig.ha.Diagnose("I", 0, 2);
         robert::UploadMessage msg;
         msg.qr = qr;
         msg.window_start_day = 0;
         msg.window_end_day = 2;
         msg.records.push_back({hello.value().Serialize(), claimed});
         adv.UploadAsPhone(rig.backend, "I", msg, infected.id());
         AtDayEpoch(w, 2, 4);
         victim.RequestStatus();
       }});

  // X7: the target's registration keys are predictable and its pre-HELLO
  // message is captured; fresh ephemerals provoke an alarm on it.
  add({"robert.X7", Protocol::kRobert,
       "alarm provoked via leaked registration keys and pre-HELLO capture",
       {}, Expectation::Attack(Property::kSoundness, PatternId::kX7, 1),
       [](World& w) {
         RobertRig rig(w);
         Adversary adv(&w);
         auto& target = rig.Phone("R");
         auto& infected = rig.Phone("I");
         auto auth_key = adv.StealRobertPhoneKey(target);
         auto pre_hello = adv.CapturePreHello(rig.backend, target.id());
         AtDayEpoch(w, 2, 3);
         Tick claimed = TickAtDayEpoch(w, 0, 3);
         auto hello = adv.MintHelloFromEntry(pre_hello.entries.at(3), auth_key,
                                             TruncatedTimestamp16(claimed));
         auto qr = rig.ha.Diagnose("I", 0, 2);
         robert::UploadMessage msg;
         msg.qr = qr;
         msg.window_start_day = 0;
         msg.window_end_day = 2;
         msg.records.push_back({hello.value().Serialize(), claimed});
         adv.UploadAsPhone(rig.backend, "I", msg, infected.id());
         AtDayEpoch(w, 2, 4);
         target.RequestStatus();
       }});

  // ===== DP3T upload authorisation (B1-B3) =====

  // B1: day key and HA signing key disclosed; another phone uploads.
  add({"dp3t.B1", Protocol::kDp3t,
       "forged authorisation over a disclosed day key", {},
       Expectation::Attack(Property::kUploadAuthGaen, PatternId::kB1),
       [](World& w) {
         Dp3tRig rig(w);
         Adversary adv(&w);
         auto& owner = rig.Phone("W");
         rig.Phone("W2");
         AtDayEpoch(w, 0, 3);
         owner.NewTek();
         auto tek = adv.StealDayKey(owner, 0);
         auto ha_keys = adv.StealHaSigningKey(rig.ha);
         AtDayEpoch(w, 2, 3);
         Bytes blind = w.rng().NextBytes(16);
         int64_t start_epoch = 0;
         auto h = dp3t::CommitmentHash(tek, start_epoch, blind);
         auto ac = adv.ForgeAuthCode(ha_keys, h, 2);
         dp3t::UploadTuple tuple;
         tuple.tek = crypto::ToVec(tek.key);
         tuple.start_epoch = start_epoch;
         tuple.blind = blind;
         tuple.ac = ac.value();
         adv.Dp3tUploadAsPhone(rig.backend, "W2", tuple);
       }});

  // B2: compromised HA sends an illegitimate positive result; the phone's
  // test database nonces are read to build matching codes.
  add({"dp3t.B2", Protocol::kDp3t,
       "illegitimate positive result authorises the original phone", {},
       Expectation::Attack(Property::kUploadAuthGaen, PatternId::kB2),
       [](World& w) {
         Dp3tRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("V");
         AtDayEpoch(w, 0, 3);
         victim.NewTek();
         AtDayEpoch(w, 1, 3);
         victim.CommitKeys(&rig.ha, {0});
         auto entries = adv.ReadTestDb(victim);
         auto ha_keys = adv.StealHaSigningKey(rig.ha);
         AtDayEpoch(w, 2, 3);
         std::vector<dp3t::AuthCode> acs;
         for (const auto& entry : entries) {
           auto h = dp3t::CommitmentHash(entry.tek, entry.start_epoch,
                                         entry.blind);
           acs.push_back(adv.ForgeAuthCode(ha_keys, h, 2).value());
         }
         adv.HaSendFakeResult("DE", victim, acs);
         victim.UploadKeys(&rig.backend);
       }});

  // B3: both phones compromised before testing; the positive phone commits
  // and uploads the other phone's key.
  add({"dp3t.B3", Protocol::kDp3t,
       "key substitution at commitment time", {},
       Expectation::Attack(Property::kUploadAuthGaen, PatternId::kB3),
       [](World& w) {
         Dp3tRig rig(w);
         Adversary adv(&w);
         auto& owner = rig.Phone("W");
         auto& uploader = rig.Phone("V");
         AtDayEpoch(w, 0, 3);
         owner.NewTek();
         auto tek = adv.StealDayKey(owner, 0);
         dp3t::TestDbEntry entry;
         entry.tek = tek;
         entry.start_epoch = 0;
         entry.blind = w.rng().NextBytes(16);
         adv.WriteTestDb(uploader, entry);
         AtDayEpoch(w, 1, 3);
         uploader.CommitStoredDb(&rig.ha);
         AtDayEpoch(w, 2, 3);
         auto acs = rig.ha.DiagnoseAndSign("V", 0, 2);
         uploader.StoreAuthCodes(acs.value());
         uploader.UploadKeys(&rig.backend);
       }});

  // ===== DP3T soundness (Y1-Y7) =====

  // Y1: in-proximity ephemeral outside the contagious window, key
  // maliciously committed and uploaded by the infected phone.
  add({"dp3t.Y1", Protocol::kDp3t,
       "out-of-window key uploaded by infected phone", {},
       Expectation::Attack(Property::kSoundness, PatternId::kY1, 1),
       [](World& w) {
         Dp3tRig rig(w);
         Adversary adv(&w);
         auto& infected = rig.Phone("I");
         auto& contact = rig.Phone("R");
         AtDayEpoch(w, 0, 3);
         GaenContact(w, infected, contact, "q1");
         AtDayEpoch(w, 9, 2);
         adv.Corrupt(Role::kPhone, Capability::kCorruptPhoneSend, "I", {});
         infected.CommitKeys(&rig.ha, {0});  // modified app commits day 0
         AtDayEpoch(w, 9, 3);
         auto acs = rig.ha.DiagnoseAndSign("I", 8, 9);
         infected.StoreAuthCodes(acs.value());
         infected.UploadKeys(&rig.backend);
         AtDayEpoch(w, 9, 4);
         contact.RunMatching(rig.backend.FetchForPhone("R"),
                             rig.backend.operator_public_key(),
                             gaen::MatchMode::kDp3t, 0);
       }});

  // Y2: infected phone's day key disclosed; adversary constructs and
  // broadcasts ephemerals to the victim.
  add({"dp3t.Y2", Protocol::kDp3t,
       "ephemerals forged from the infected phone's disclosed day key", {},
       Expectation::Attack(Property::kSoundness, PatternId::kY2, 1),
       [](World& w) {
         Dp3tRig rig(w);
         Adversary adv(&w);
         auto& infected = rig.Phone("I");
         auto& victim = rig.Phone("R");
         AtDayEpoch(w, 0, 2);
         infected.NewTek();
         auto tek = adv.StealDayKey(infected, 0);
         AtDayEpoch(w, 0, 3);
         auto payload = adv.PayloadFromTek(tek, UnixEpochIndex(w, 0, 3));
         adv.BleWrite("p2", payload.value());
         w.SetPlace("R", "p2");
         victim.Scan("p2");
         AtDayEpoch(w, 1, 3);
         infected.CommitKeys(&rig.ha, {0});
         AtDayEpoch(w, 2, 3);
         auto acs = rig.ha.DiagnoseAndSign("I", 0, 2);
         infected.StoreAuthCodes(acs.value());
         infected.UploadKeys(&rig.backend);
         AtDayEpoch(w, 2, 4);
         victim.RunMatching(rig.backend.FetchForPhone("R"),
                            rig.backend.operator_public_key(),
                            gaen::MatchMode::kDp3t, 0);
       }});

  // Y3: same-day replay at a different epoch and place.
  add({"dp3t.Y3", Protocol::kDp3t, "same-day replay of observed ephemeral",
       {}, Expectation::Attack(Property::kSoundness, PatternId::kY3, 1),
       [](World& w) {
         Dp3tRig rig(w);
         Adversary adv(&w);
         auto& infected = rig.Phone("I");
         auto& victim = rig.Phone("R");
         AtDayEpoch(w, 0, 3);
         w.SetPlace("I", "p1");
         infected.Broadcast("p1");
         auto observed = adv.BleRead("p1");
         AtDayEpoch(w, 0, 20);
         adv.BleWrite("p2", observed[0]);
         w.SetPlace("R", "p2");
         victim.Scan("p2");
         AtDayEpoch(w, 1, 3);
         infected.CommitKeys(&rig.ha, {0});
         AtDayEpoch(w, 2, 3);
         auto acs = rig.ha.DiagnoseAndSign("I", 0, 2);
         infected.StoreAuthCodes(acs.value());
         infected.UploadKeys(&rig.backend);
         AtDayEpoch(w, 2, 4);
         victim.RunMatching(rig.backend.FetchForPhone("R"),
                            rig.backend.operator_public_key(),
                            gaen::MatchMode::kDp3t, 0);
       }});

  // Y4: forged day keys broadcast, then maliciously uploaded under a
  // forged authorisation code.
  add({"dp3t.Y4", Protocol::kDp3t, "forged day key broadcast and uploaded",
       {}, Expectation::Attack(Property::kSoundness, PatternId::kY4, 1),
       [](World& w) {
         Dp3tRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("R");
         auto forged = adv.ForgeTek(0);
         AtDayEpoch(w, 0, 3);
         auto payload = adv.PayloadFromTek(forged, UnixEpochIndex(w, 0, 3));
         adv.BleWrite("p2", payload.value());
         w.SetPlace("R", "p2");
         victim.Scan("p2");
         auto ha_keys = adv.StealHaSigningKey(rig.ha);
         AtDayEpoch(w, 0, 5);
         Bytes blind = w.rng().NextBytes(16);
         auto h = dp3t::CommitmentHash(forged, 0, blind);
         dp3t::UploadTuple tuple;
         tuple.tek = crypto::ToVec(forged.key);
         tuple.start_epoch = 0;
         tuple.blind = blind;
         tuple.ac = adv.ForgeAuthCode(ha_keys, h, 0).value();
         rig.backend.ProcessUpload(tuple);
         AtDayEpoch(w, 1, 1);
         victim.RunMatching(rig.backend.FetchForPhone("R"),
                            rig.backend.operator_public_key(),
                            gaen::MatchMode::kDp3t, 0);
       }});

  // Y5: a non-diagnosed phone's day key disclosed and maliciously uploaded;
  // its ephemerals replayed to victims.
  add({"dp3t.Y5", Protocol::kDp3t,
       "disclosed day key maliciously uploaded", {},
       Expectation::Attack(Property::kSoundness, PatternId::kY5, 1),
       [](World& w) {
         Dp3tRig rig(w);
         Adversary adv(&w);
         auto& owner = rig.Phone("W");
         auto& victim = rig.Phone("R");
         AtDayEpoch(w, 0, 2);
         owner.NewTek();
         auto tek = adv.StealDayKey(owner, 0);
         AtDayEpoch(w, 0, 3);
         auto payload = adv.PayloadFromTek(tek, UnixEpochIndex(w, 0, 3));
         adv.BleWrite("p2", payload.value());
         w.SetPlace("R", "p2");
         victim.Scan("p2");
         auto ha_keys = adv.StealHaSigningKey(rig.ha);
         AtDayEpoch(w, 0, 5);
         Bytes blind = w.rng().NextBytes(16);
         auto h = dp3t::CommitmentHash(tek, 0, blind);
         dp3t::UploadTuple tuple;
         tuple.tek = crypto::ToVec(tek.key);
         tuple.start_epoch = 0;
         tuple.blind = blind;
         tuple.ac = adv.ForgeAuthCode(ha_keys, h, 0).value();
         rig.backend.ProcessUpload(tuple);
         AtDayEpoch(w, 1, 1);
         victim.RunMatching(rig.backend.FetchForPhone("R"),
                            rig.backend.operator_public_key(),
                            gaen::MatchMode::kDp3t, 0);
       }});

  // Y6: real proximity; sender's day key and back-end signing key leaked,
  // forged bundle served to the receiver. No upload takes place.
  add({"dp3t.Y6", Protocol::kDp3t,
       "forged key bundle signed with leaked back-end key", {},
       Expectation::Attack(Property::kSoundness, PatternId::kY6, 1),
       [](World& w) {
         Dp3tRig rig(w);
         Adversary adv(&w);
         auto& sender = rig.Phone("S");
         auto& victim = rig.Phone("R");
         AtDayEpoch(w, 0, 3);
         GaenContact(w, sender, victim, "q1");
         auto tek = adv.StealDayKey(sender, 0);
         auto op_keys = adv.StealOperatorSigKeys("DE", rig.backend.sig_keys());
         auto bundle = adv.ForgeReleasedBundle(op_keys, {tek}, "DE");
         AtDayEpoch(w, 1, 1);
         victim.RunMatching(bundle.value(), rig.backend.operator_public_key(),
                            gaen::MatchMode::kDp3t, 0);
       }});

  // Y7: forged ephemerals broadcast; compromised back end notifies all
  // recipients via a forged bundle.
  add({"dp3t.Y7", Protocol::kDp3t,
       "forged ephemerals plus compromised back end", {},
       Expectation::Attack(Property::kSoundness, PatternId::kY7, 1),
       [](World& w) {
         Dp3tRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("R");
         auto forged = adv.ForgeTek(0);
         AtDayEpoch(w, 0, 3);
         auto payload = adv.PayloadFromTek(forged, UnixEpochIndex(w, 0, 3));
         adv.BleWrite("p2", payload.value());
         w.SetPlace("R", "p2");
         victim.Scan("p2");
         auto op_keys = adv.StealOperatorSigKeys("DE", rig.backend.sig_keys());
         auto bundle = adv.ForgeReleasedBundle(op_keys, {forged}, "DE");
         AtDayEpoch(w, 1, 1);
         victim.RunMatching(bundle.value(), rig.backend.operator_public_key(),
                            gaen::MatchMode::kDp3t, 0);
       }});

  // ===== CWA upload authorisation (C1-C2) =====

  // C1: another phone's disclosed TEK uploaded with a valid TAN.
  add({"cwa.C1", Protocol::kCwa, "foreign TEK uploaded with own TAN", {},
       Expectation::Attack(Property::kUploadAuthGaen, PatternId::kC1),
       [](World& w) {
         CwaRig rig(w);
         Adversary adv(&w);
         auto& owner = rig.Phone("W");
         auto& positive = rig.Phone("V");
         AtDayEpoch(w, 0, 2);
         owner.NewTek();
         auto tek = adv.StealDayKey(owner, 0);
         AtDayEpoch(w, 2, 3);
         Bytes tan = rig.DiagnosePositive(positive, 0, 2);
         adv.CwaUploadAsPhone(rig.backend, "V",
                              {{crypto::ToVec(tek.key), 0}}, tan);
       }});

  // C2: the guid leaks from the verification server's phone channel; with
  // the one-TAN-per-token fix off, re-registration yields fresh TANs.
  auto c2_script = [](World& w) {
    CwaRig rig(w);
    Adversary adv(&w);
    auto& victim = rig.Phone("V");
    auto& mal = rig.Phone("mal");  // adversary-owned device, honest keygen
    AtDayEpoch(w, 0, 2);
    mal.NewTek();
    AtDayEpoch(w, 1, 3);
    Bytes guid = rig.tc.IssueGuid();
    victim.ScanGuid(guid);
    adv.CaptureVsGuid(rig.vs, guid);
    victim.RegisterWithVs(&rig.vs);
    AtDayEpoch(w, 2, 3);
    rig.tc.RecordPositive("V", guid, 0, 2);
    victim.Poll(&rig.vs);
    victim.ObtainTan(&rig.vs);
    victim.UploadOwnTeks(&rig.backend, {});
    // Re-register the used guid and pull a fresh TAN for arbitrary keys.
    auto reg = rig.vs.ScanAndRegister(guid);
    if (reg.ok()) {
      auto tan = rig.vs.RequestTan(reg.value());
      if (tan.ok()) {
        std::vector<cwa::UploadedTek> uploads;
        uploads.push_back({crypto::ToVec(mal.TekForDay(0).key), 0});
        rig.backend.ProcessUpload(uploads, tan.value(), {});
      }
    }
  };
  add({"cwa.C2", Protocol::kCwa, "guid replay yields arbitrary TANs",
       {{"cwa.one_tan_per_token", "false"}},
       Expectation::Attack(Property::kUploadAuthGaen, PatternId::kC2),
       c2_script});
  add({"cwa.C2.mitigated", Protocol::kCwa,
       "one-to-one TAN/regToken relationship enforced", {},
       Expectation::Mitigated("cwa.one_tan_per_token"), c2_script});

  // ===== CWA soundness (Z1-Z4) =====

  // Z1: replay within the clock-skew toleration.
  add({"cwa.Z1", Protocol::kCwa, "replay within the two-hour toleration", {},
       Expectation::Attack(Property::kSoundness, PatternId::kZ1, 1),
       [](World& w) {
         CwaRig rig(w);
         Adversary adv(&w);
         auto& infected = rig.Phone("I");
         auto& victim = rig.Phone("R");
         AtDayEpoch(w, 0, 3);
         w.SetPlace("I", "p1");
         infected.Broadcast("p1");
         auto observed = adv.BleRead("p1");
         AtDayEpoch(w, 0, 8);  // five epochs later, inside the toleration
         adv.BleWrite("p2", observed[0]);
         w.SetPlace("R", "p2");
         victim.Scan("p2");
         AtDayEpoch(w, 1, 3);
         Bytes guid = rig.tc.IssueGuid();
         infected.ScanGuid(guid);
         infected.RegisterWithVs(&rig.vs);
         AtDayEpoch(w, 2, 3);
         rig.tc.RecordPositive("I", guid, 0, 2);
         infected.Poll(&rig.vs);
         infected.ObtainTan(&rig.vs);
         infected.UploadOwnTeks(&rig.backend, {});
         AtDayEpoch(w, 2, 4);
         victim.RunMatching(rig.backend.FetchKeys(),
                            rig.backend.operator_public_key(),
                            gaen::MatchMode::kCwa,
                            w.config().cwa_skew_tolerance_epochs);
       }});

  // Z2: forged day key broadcast, then uploaded through a compromised
  // positive phone.
  add({"cwa.Z2", Protocol::kCwa, "forged day key broadcast and uploaded", {},
       Expectation::Attack(Property::kSoundness, PatternId::kZ2, 1),
       [](World& w) {
         CwaRig rig(w);
         Adversary adv(&w);
         auto& positive = rig.Phone("V");
         auto& victim = rig.Phone("R");
         auto forged = adv.ForgeTek(0);
         AtDayEpoch(w, 0, 3);
         auto payload = adv.PayloadFromTek(forged, UnixEpochIndex(w, 0, 3));
         adv.BleWrite("p2", payload.value());
         w.SetPlace("R", "p2");
         victim.Scan("p2");
         AtDayEpoch(w, 2, 3);
         Bytes tan = rig.DiagnosePositive(positive, 0, 2);
         adv.CwaUploadAsPhone(rig.backend, "V",
                              {{crypto::ToVec(forged.key), 0}}, tan);
         AtDayEpoch(w, 2, 4);
         victim.RunMatching(rig.backend.FetchKeys(),
                            rig.backend.operator_public_key(),
                            gaen::MatchMode::kCwa,
                            w.config().cwa_skew_tolerance_epochs);
       }});

  // Z3: disclosed day key broadcast by the adversary and maliciously
  // uploaded.
  add({"cwa.Z3", Protocol::kCwa,
       "disclosed day key replayed and maliciously uploaded", {},
       Expectation::Attack(Property::kSoundness, PatternId::kZ3, 1),
       [](World& w) {
         CwaRig rig(w);
         Adversary adv(&w);
         auto& owner = rig.Phone("W");
         auto& positive = rig.Phone("V");
         auto& victim = rig.Phone("R");
         AtDayEpoch(w, 0, 2);
         owner.NewTek();
         auto tek = adv.StealDayKey(owner, 0);
         AtDayEpoch(w, 0, 3);
         auto payload = adv.PayloadFromTek(tek, UnixEpochIndex(w, 0, 3));
         adv.BleWrite("p2", payload.value());
         w.SetPlace("R", "p2");
         victim.Scan("p2");
         AtDayEpoch(w, 2, 3);
         Bytes tan = rig.DiagnosePositive(positive, 0, 2);
         adv.CwaUploadAsPhone(rig.backend, "V",
                              {{crypto::ToVec(tek.key), 0}}, tan);
         AtDayEpoch(w, 2, 4);
         victim.RunMatching(rig.backend.FetchKeys(),
                            rig.backend.operator_public_key(),
                            gaen::MatchMode::kCwa,
                            w.config().cwa_skew_tolerance_epochs);
       }});

  // Z4: forged ephemerals broadcast; forged bundle signed with the leaked
  // operator key.
  add({"cwa.Z4", Protocol::kCwa,
       "forged ephemerals plus compromised back end", {},
       Expectation::Attack(Property::kSoundness, PatternId::kZ4, 1),
       [](World& w) {
         CwaRig rig(w);
         Adversary adv(&w);
         auto& victim = rig.Phone("R");
         auto forged = adv.ForgeTek(0);
         AtDayEpoch(w, 0, 3);
         auto payload = adv.PayloadFromTek(forged, UnixEpochIndex(w, 0, 3));
         adv.BleWrite("p2", payload.value());
         w.SetPlace("R", "p2");
         victim.Scan("p2");
         auto op_keys = adv.StealOperatorSigKeys("DE", rig.backend.sig_keys());
         auto bundle = adv.ForgeReleasedBundle(op_keys, {forged}, "DE");
         AtDayEpoch(w, 1, 1);
         victim.RunMatching(bundle.value(), rig.backend.operator_public_key(),
                            gaen::MatchMode::kCwa,
                            w.config().cwa_skew_tolerance_epochs);
       }});

  // ===== EFGS federation =====

  // One back end releases a key before the other's matchers stop accepting
  // it; the adversary rebroadcasts in the gap.
  auto efgs_script = [](World& w) {
    CwaRig de(w, "DE");
    cwa::VerificationServer vs_fr(&w, "FR");
    cwa::CwaBackend fr(&w, "FR", &vs_fr);
    cwa::EfgsHub hub;
    de.backend.ConnectHub(&hub);
    fr.ConnectHub(&hub);
    // Local policy when no expiry agreement binds the federation: DE
    // releases at end of day.
    de.backend.set_local_release_delay_hours(0);

    Adversary adv(&w);
    auto& infected = de.Phone("I");
    cwa::CwaPhone victim(&w, "R", "FR");
    AtDayEpoch(w, 0, 2);
    infected.NewTek();
    AtDayEpoch(w, 0, 5);
    Bytes guid = de.tc.IssueGuid();
    infected.ScanGuid(guid);
    infected.RegisterWithVs(&de.vs);
    de.tc.RecordPositive("I", guid, 0, 2);
    infected.Poll(&de.vs);
    infected.ObtainTan(&de.vs);
    infected.UploadOwnTeks(&de.backend, {"FR"});

    // Shortly after midnight: fetch from the early-releasing back end and
    // rebroadcast the last epoch of day 0.
    AtDayEpoch(w, 1, 0);
    auto published = adv.FetchPublishedKeys(de.backend);
    if (!published.empty()) {
      gaen::Tek tek = TekFromReleased(published[0]);
      auto payload = adv.PayloadFromTek(
          tek, UnixEpochIndex(w, 0, w.config().time.epochs_per_day - 1));
      adv.BleWrite("p2", payload.value());
    }
    w.SetPlace("R", "p2");
    victim.Scan("p2");

    // After every back end's release time has passed, probe the closed gap
    // as well, then run matching at the victim.
    AtDayEpoch(w, 1, 14);
    auto late = adv.FetchPublishedKeys(de.backend);
    if (!late.empty()) {
      gaen::Tek tek = TekFromReleased(late[0]);
      auto payload = adv.PayloadFromTek(
          tek, UnixEpochIndex(w, 0, w.config().time.epochs_per_day - 1));
      adv.BleWrite("p2", payload.value());
      victim.Scan("p2");
    }
    victim.RunMatching(fr.FetchKeys(), fr.operator_public_key(),
                       gaen::MatchMode::kCwa,
                       w.config().cwa_skew_tolerance_epochs);
  };
  add({"cwa.EFGS", Protocol::kCwa,
       "early release by one back end opens a replay gap",
       {{"efgs.expiry_agreement", "false"}},
       Expectation::Attack(Property::kSoundness, PatternId::kZ1, 1),
       efgs_script});
  add({"cwa.EFGS.mitigated", Protocol::kCwa,
       "federated expiry agreement closes the gap", {},
       Expectation::Mitigated("efgs.expiry_agreement"), efgs_script});

  // ===== Comparative group scenarios =====

  // A group of three compromised phones, one of which tests positive, with
  // contact sets {R1}, {R2,R3,R4} and {R5,R6}.

  add({"group.robert", Protocol::kRobert,
       "group routes all observed ephemerals to the positive member", {},
       Expectation::Attack(Property::kSoundness, PatternId::kX4, 6),
       [](World& w) {
         RobertRig rig(w);
         Adversary adv(&w);
         auto& g1 = rig.Phone("G1");
         auto& g2 = rig.Phone("G2");
         auto& g3 = rig.Phone("G3");
         std::vector<std::string> contacts = {"R1", "R2", "R3",
                                              "R4", "R5", "R6"};
         for (const auto& name : contacts) rig.Phone(name);
         AtDayEpoch(w, 0, 3);
         RobertContact(w, rig.Phone("R1"), g1, "p1");
         RobertContact(w, rig.Phone("R2"), g2, "p2");
         RobertContact(w, rig.Phone("R3"), g2, "p2");
         RobertContact(w, rig.Phone("R4"), g2, "p2");
         RobertContact(w, rig.Phone("R5"), g3, "p3");
         RobertContact(w, rig.Phone("R6"), g3, "p3");
         AtDayEpoch(w, 2, 3);
         auto qr = rig.ha.Diagnose("G1", 0, 2);
         auto records = g1.RecordsInWindow(0, 2);
         for (const auto& r : adv.StealReceivedRecords(g2)) records.push_back(r);
         for (const auto& r : adv.StealReceivedRecords(g3)) records.push_back(r);
         auto msg = robert::MakeUploadMessage(qr, records, 0, 2);
         adv.UploadAsPhone(rig.backend, "G1", msg, g1.id());
         AtDayEpoch(w, 2, 4);
         for (const auto& name : contacts) rig.Phone(name).RequestStatus();
       }});

  add({"group.dp3t", Protocol::kDp3t,
       "only the positive member's own contacts can be alarmed", {},
       Expectation::None(1), [](World& w) {
         Dp3tRig rig(w);
         auto& g1 = rig.Phone("G1");
         auto& g2 = rig.Phone("G2");
         auto& g3 = rig.Phone("G3");
         std::vector<std::string> contacts = {"R1", "R2", "R3",
                                              "R4", "R5", "R6"};
         for (const auto& name : contacts) rig.Phone(name);
         AtDayEpoch(w, 0, 3);
         GaenContact(w, g1, rig.Phone("R1"), "p1");
         GaenContact(w, g2, rig.Phone("R2"), "p2");
         GaenContact(w, g2, rig.Phone("R3"), "p2");
         GaenContact(w, g2, rig.Phone("R4"), "p2");
         GaenContact(w, g3, rig.Phone("R5"), "p3");
         GaenContact(w, g3, rig.Phone("R6"), "p3");
         AtDayEpoch(w, 1, 3);
         g1.CommitKeys(&rig.ha, {0});
         AtDayEpoch(w, 2, 3);
         auto acs = rig.ha.DiagnoseAndSign("G1", 0, 2);
         g1.StoreAuthCodes(acs.value());
         g1.UploadKeys(&rig.backend);
         AtDayEpoch(w, 2, 4);
         for (const auto& name : contacts) {
           rig.Phone(name).RunMatching(rig.backend.FetchForPhone(name),
                                       rig.backend.operator_public_key(),
                                       gaen::MatchMode::kDp3t, 0);
         }
       }});

  add({"group.cwa", Protocol::kCwa,
       "group uploads the key of its best-connected member", {},
       Expectation::Attack(Property::kSoundness, PatternId::kZ3, 3),
       [](World& w) {
         CwaRig rig(w);
         Adversary adv(&w);
         auto& g1 = rig.Phone("G1");
         auto& g2 = rig.Phone("G2");
         auto& g3 = rig.Phone("G3");
         std::vector<std::string> contacts = {"R1", "R2", "R3",
                                              "R4", "R5", "R6"};
         for (const auto& name : contacts) rig.Phone(name);
         AtDayEpoch(w, 0, 3);
         GaenContact(w, g1, rig.Phone("R1"), "p1");
         GaenContact(w, g2, rig.Phone("R2"), "p2");
         GaenContact(w, g2, rig.Phone("R3"), "p2");
         GaenContact(w, g2, rig.Phone("R4"), "p2");
         GaenContact(w, g3, rig.Phone("R5"), "p3");
         GaenContact(w, g3, rig.Phone("R6"), "p3");
         AtDayEpoch(w, 0, 10);
         auto tek = adv.StealDayKey(g2, 0);  // best-connected member
         AtDayEpoch(w, 2, 3);
         Bytes tan = rig.DiagnosePositive(g1, 0, 2);
         adv.CwaUploadAsPhone(rig.backend, "G1",
                              {{crypto::ToVec(tek.key), 0}}, tan);
         AtDayEpoch(w, 2, 4);
         for (const auto& name : contacts) {
           rig.Phone(name).RunMatching(rig.backend.FetchKeys(),
                                       rig.backend.operator_public_key(),
                                       gaen::MatchMode::kCwa,
                                       w.config().cwa_skew_tolerance_epochs);
         }
       }});

  return all;
}

}  // namespace

const std::vector<Scenario>& AllScenarios() {
  static const std::vector<Scenario>* catalog =
      new std::vector<Scenario>(BuildCatalog());
  return *catalog;
}

}  // namespace enslab::harness
