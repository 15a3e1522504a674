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
#include "mops/migrate.h"

#include "mops/error.h"
#include "mops/evidence_format.h"
#include "mops/verify.h"

namespace mops {

namespace {

void RequireValidSource(const EvidenceRecord& source, const DocumentSet& docs,
                        TimeInstant t, const ProtectContext& ctx) {
  VerifyOptions o;
  o.at = t;
  Verdict v = VerifyProof(source, docs, ctx.source, ctx.inventory, o);
  if (v.valid) return;
  std::string why = "source proof does not verify";
  for (const DocumentVerdict& d : v.documents) {
    if (!d.valid && !d.diagnostics.empty()) {
      why += ": " + d.name + ": " + d.diagnostics[0].detail;
      break;
    }
  }
  if (why.find(": ") == std::string::npos && !v.record_diagnostics.empty()) {
    why += ": " + v.record_diagnostics[0].detail;
  }
  throw Error(Errc::kInvalidSource, why);
}

}  // namespace

TimeInstant FirstAttestationTime(const EvidenceRecord& record,
                                 const std::string& name) {
  auto from_item = [&](const Item& item, TimeInstant here) {
    if (item.kind == ItemKind::kDocument) return here;
    if (item.receipt >= record.receipts.size()) {
      throw Error(Errc::kParse, "item refers to a missing migration receipt");
    }
    const MigrationReceipt& m = record.receipts[item.receipt];
    return FirstAttestationTime(ParseRecord(std::string_view(m.source_record)),
                                name);
  };
  if (const auto* as = std::get_if<AsState>(&record.state)) {
    for (const Item& i : as->payload.items) {
      if (i.name == name) return from_item(i, as->chain.at(0).attestation.stated_time);
    }
  } else if (const auto* mts = std::get_if<MtsState>(&record.state)) {
    for (const Item& i : mts->items) {
      if (i.name == name) return from_item(i, mts->chain.at(0).attestation.stated_time);
    }
  } else if (const auto* seq = std::get_if<SequenceState>(&record.state)) {
    for (const Element& e : seq->chain) {
      if (!e.payload.has_value()) continue;
      for (const Item& i : e.payload->items) {
        if (i.name == name) return from_item(i, e.attestation.stated_time);
      }
    }
  } else {
    const auto& naw = std::get<NawState>(record.state);
    for (const Item& i : naw.subject.items) {
      if (i.name == name) return from_item(i, naw.original_time);
    }
  }
  throw Error(Errc::kUsage, "document '" + name + "' not in the record");
}

EvidenceRecord MigrateToSequence(const EvidenceRecord& source,
                                 StructureKind target_kind,
                                 const std::optional<EvidenceRecord>& target,
                                 TimeInstant t, HashFunctionId h,
                                 const DocumentSet& docs, Attester& attester,
                                 const ProtectContext& ctx) {
  if (target_kind == StructureKind::kNaw) {
    throw Error(Errc::kUsage, "use MigrateToNaw for a NAW target");
  }
  RequireValidSource(source, docs, t, ctx);

  MigrationReceipt receipt;
  receipt.source_kind = source.kind;
  receipt.target_kind = target_kind;
  receipt.migrated_at = t;
  receipt.source_record = SerializeRecord(source);
  receipt.source_head_verification =
      ctx.source.Collect(HeadAttestation(source).issuer_cert, t);

  const auto index = static_cast<std::uint32_t>(
      target.has_value() ? target->receipts.size() : 0);
  std::vector<Item> items;
  const std::vector<std::string> names = DocumentNames(source);
  for (const std::string& name : names) {
    items.push_back({names.size() == 1 ? ItemKind::kMigratedHead
                                       : ItemKind::kMigratedDocument,
                     name, index});
  }
  const bool batch = items.size() > 1;

  if (target.has_value()) {
    if (target->kind != target_kind) {
      throw Error(Errc::kUsage, "target record kind differs from target_kind");
    }
    if (target_kind != StructureKind::kMds && target_kind != StructureKind::kSls) {
      throw Error(Errc::kUsage, "only MDS and SLS records accept migrated data");
    }
    return Execute(ProposeAdd(*target, std::move(items), batch, h, t, docs, ctx,
                              {std::move(receipt)}),
                   attester);
  }
  return Execute(ProposeInit(target_kind, attester.kind(), std::move(items), batch,
                             h, t, docs, ctx, {std::move(receipt)}),
                 attester);
}

std::vector<EvidenceRecord> MigrateToNaw(const EvidenceRecord& source,
                                         TimeInstant t, HashFunctionId h,
                                         const DocumentSet& docs,
                                         Attester& notary,
                                         const ProtectContext& ctx, bool batch) {
  if (notary.kind() != IssuerKind::kNa) {
    throw Error(Errc::kIncompatible, "NAW migration needs a notarial authority");
  }
  RequireValidSource(source, docs, t, ctx);

  const std::vector<std::string> names = DocumentNames(source);
  std::vector<std::vector<std::string>> groups;
  if (batch) {
    groups.push_back(names);
  } else {
    for (const std::string& n : names) groups.push_back({n});
  }

  const std::string serialized = SerializeRecord(source);
  std::vector<std::pair<std::string, Bytes>> supplied;
  for (const auto& [name, doc] : docs) supplied.emplace_back(name, doc.Encode());

  std::vector<EvidenceRecord> out;
  for (const std::vector<std::string>& group : groups) {
    DocumentSet subset;
    for (const std::string& n : group) {
      auto it = docs.find(n);
      if (it == docs.end()) {
        throw Error(Errc::kUsage, "document '" + n + "' not supplied");
      }
      subset.emplace(n, it->second);
    }
    TimeInstant t0 = FirstAttestationTime(source, group[0]);
    for (const std::string& n : group) t0 = std::min(t0, FirstAttestationTime(source, n));

    Proposal p = ProposeInit(StructureKind::kNaw, IssuerKind::kNa,
                             DocumentItems(group), group.size() > 1, h, t, subset,
                             ctx);
    auto& naw = std::get<NawState>(p.next.state);
    naw.original_time = t0;
    p.next.created_at = t;
    NaExtras& x = *p.na_extras;
    x.operation = NaOperation::kMigrate;
    x.original_time = t0;
    x.source_record = serialized;
    x.subject_names = group;
    x.source_documents = supplied;
    out.push_back(Execute(std::move(p), notary));
  }
  return out;
}

}  // namespace mops
