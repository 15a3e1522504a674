// Copyright 2026 The MoPS Authors
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
//
////////////////////////////////////////////////////////////////////////////////
#include "mops/simulation.h"

#include <random>
#include <sstream>

#include "mops/attestation.h"
#include "mops/error.h"
#include "mops/evidence_format.h"
#include "mops/structures.h"
#include "mops/verify.h"
#include "mops/world.h"

namespace mops {

namespace {

bool SecureBeyond(const SecurityInventory& inv, HashFunctionId h, TimeInstant t) {
  return inv.SecureAt(h, t) && inv.SecureAt(PairedParams(h), t);
}

std::string DocName(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "doc-%03zu", i);
  return buf;
}

InputData MakeDocument(PkiWorld& world, std::uint64_t seed, std::size_t index,
                       std::size_t size, HashFunctionId h, TimeInstant at) {
  std::mt19937_64 rng(seed * 1000003u + index);
  Bytes content(size);
  for (std::uint8_t& b : content) b = static_cast<std::uint8_t>(rng());
  PkiWorld::Credential cred = world.LeafCredential("signer", h, at);
  return {content, SignDocument(content, cred.key, cred.certificate, h, at)};
}

}  // namespace

HashFunctionId SelectHash(const SecurityInventory& inv, HashFunctionId current,
                          TimeInstant at, int threshold_days) {
  const TimeInstant horizon = AddDays(at, threshold_days);
  for (HashFunctionId h : kAllHashFunctions) {
    if (h < current) continue;
    if (SecureBeyond(inv, h, horizon)) return h;
  }
  return kAllHashFunctions.back();
}

SimulationReport Simulate(const SimulationConfig& config) {
  if (config.years < 1) throw Error(Errc::kUsage, "years must be positive");
  WorldConfig wc;
  wc.seed = config.seed;
  PkiWorld world(wc);
  const SecurityInventory inv = DefaultLenstraInventory();
  TimestampAuthority tsa(world);
  NotarialAuthority na(world, inv);
  ProtectContext ctx{world, inv};
  const StructureKind kind = config.structure;
  Attester& attester = kind == StructureKind::kNaw ? static_cast<Attester&>(na) : tsa;
  const bool sequential = kind == StructureKind::kMds || kind == StructureKind::kSls;
  const int thr = config.renewal_threshold_days;

  SimulationReport rep;
  rep.config = config;
  rep.end = AddYears(config.start, config.years);

  TimeInstant t = config.start;
  HashFunctionId h = SelectHash(inv, HashFunctionId::kSha256, t, thr);
  const std::size_t initial = kind == StructureKind::kMts ? config.mts_documents : 1;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < initial; ++i) {
    names.push_back(DocName(i));
    rep.docs[names.back()] =
        MakeDocument(world, config.seed, i, config.document_size, h, t);
  }
  EvidenceRecord r = Protect(kind, names, false, rep.docs, t, h, attester, ctx);
  std::size_t next_doc = initial;

  TimeInstant due = AddDays(HeadValidityEnd(r, ctx, t), -thr);
  int added_years = 0;
  for (TimeInstant day = AddDays(t, 1); day < rep.end; day = AddDays(day, 1)) {
    const HashFunctionId current = HeadHash(r);
    h = SelectHash(inv, current, day, thr);
    const bool add = sequential && added_years + 1 < config.years &&
                     day >= AddYears(config.start, added_years + 1);
    if (add) {
      const std::string name = DocName(next_doc);
      rep.docs[name] = MakeDocument(world, config.seed, next_doc, config.document_size, h, day);
      ++next_doc;
      ++added_years;
      r = AddDocument(r, name, day, h, rep.docs, attester, ctx);
      ++rep.additions;
    } else if (day >= due || h != current) {
      r = Renew(r, day, h, rep.docs, attester, ctx);
      if (h == current) ++rep.attestation_renewals;
    } else {
      continue;
    }
    if (h != current) {
      ++rep.hash_renewals;
      rep.hash_renewal_times.push_back(day);
    }
    due = AddDays(HeadValidityEnd(r, ctx, day), -thr);
  }

  rep.documents = DocumentNames(r).size();
  rep.attestations = AttestationCount(r);
  rep.elements = kind == StructureKind::kNaw ? 1 : Chain(r).size();
  rep.proof_size = SerializeRecord(r).size();

  VerifyOptions all;
  all.at = rep.end;
  rep.all_valid = VerifyProof(r, rep.docs, world, inv, all).valid;

  const std::vector<std::string> listed = DocumentNames(r);
  rep.scenario_document = kind == StructureKind::kMds ? listed.back() : listed.front();
  VerifyOptions one = all;
  one.record_integrity = false;
  DocumentVerdict v = VerifyDocument(r, rep.scenario_document, rep.docs, world, inv, one);
  rep.scenario_valid = v.valid;
  rep.attestations_touched = v.attestations_checked;
  rep.record = std::move(r);
  return rep;
}

std::string SimulationReport::ToText() const {
  std::ostringstream o;
  o << "structure=" << StructureName(config.structure) << "\n"
    << "seed=" << config.seed << "\n"
    << "start=" << FormatTime(config.start) << "\n"
    << "end=" << FormatTime(end) << "\n"
    << "years=" << config.years << "\n"
    << "threshold_days=" << config.renewal_threshold_days << "\n"
    << "documents=" << documents << "\n"
    << "additions=" << additions << "\n"
    << "attestation_renewals=" << attestation_renewals << "\n"
    << "hash_renewals=" << hash_renewals << "\n"
    << "hash_renewal_times=";
  for (std::size_t i = 0; i < hash_renewal_times.size(); ++i) {
    o << (i ? "," : "") << FormatTime(hash_renewal_times[i]);
  }
  o << "\n"
    << "attestations=" << attestations << "\n"
    << "elements=" << elements << "\n"
    << "proof_size_bytes=" << proof_size << "\n"
    << "valid=" << (all_valid ? 1 : 0) << "\n"
    << "scenario_document=" << scenario_document << "\n"
    << "scenario_valid=" << (scenario_valid ? 1 : 0) << "\n"
    << "attestations_touched=" << attestations_touched << "\n";
  return o.str();
}

}  // namespace mops
