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
#include "mops/combine.h"

#include <map>

#include "mops/attested_bytes.h"
#include "mops/error.h"

namespace mops {

namespace {

bool IsSequence(StructureKind k) {
  return k == StructureKind::kMds || k == StructureKind::kSls;
}

void ReplaceHead(EvidenceRecord& record, const Attestation& a) {
  if (auto* naw = std::get_if<NawState>(&record.state)) {
    naw->attestation = a;
  } else {
    MutableChain(record).back().attestation = a;
  }
}

std::optional<AuthPath> HeadCumulation(const EvidenceRecord& record) {
  if (const auto* naw = std::get_if<NawState>(&record.state)) {
    return naw->cumulation;
  }
  return Chain(record).back().cumulation;
}

}  // namespace

void BatchCoordinator::Add(Proposal proposal) {
  if (proposal.hash_fn != hash_fn_) {
    throw Error(Errc::kMixedHashFunctions,
                std::string("coordinator uses ") + std::string(HashName(hash_fn_)) +
                    ", proposal uses " + std::string(HashName(proposal.hash_fn)));
  }
  if (proposal.na_extras.has_value() && attester_ != IssuerKind::kNa) {
    throw Error(Errc::kIncompatible,
                "NAW records can only be cumulated by a notarial authority");
  }
  pending_.push_back(std::move(proposal));
}

std::vector<EvidenceRecord> BatchCoordinator::Attest(Attester& attester,
                                                     TimeInstant t) {
  std::vector<Proposal> batch = std::move(pending_);
  pending_.clear();
  if (attester.kind() != attester_) {
    throw Error(Errc::kIncompatible, "attester kind differs from the coordinator");
  }
  return CumulateAttest(std::move(batch), attester, t);
}

std::vector<EvidenceRecord> CumulateAttest(std::vector<Proposal> proposals,
                                           Attester& attester, TimeInstant t) {
  if (proposals.empty()) throw Error(Errc::kEmptyInput, "nothing to cumulate");
  const HashFunctionId h = proposals[0].hash_fn;
  std::vector<Bytes> leaves;
  for (const Proposal& p : proposals) {
    if (p.hash_fn != h) {
      throw Error(Errc::kMixedHashFunctions,
                  "cumulated requests must share one hash function");
    }
    if (p.na_extras.has_value() && attester.kind() != IssuerKind::kNa) {
      throw Error(Errc::kIncompatible,
                  "NAW records can only be cumulated by a notarial authority");
    }
    if (p.time != t) {
      throw Error(Errc::kUsage, "proposal prepared for a different time");
    }
    leaves.push_back(p.attested_bytes);
  }
  MerkleTree tree(h, leaves);
  AttestRequest request;
  request.hash_fn = h;
  request.requested_time = t;
  request.payload_digest = Hash(h, attested::Cumulated(h, tree.root()));
  if (attester.kind() == IssuerKind::kNa) {
    NaExtras x;
    x.operation = NaOperation::kCumulate;
    for (const Proposal& p : proposals) {
      x.members.push_back({Hash(h, p.attested_bytes), p.na_extras});
    }
    request.na_extras = std::move(x);
  }
  Attestation a = attester.Attest(request, t);
  std::vector<EvidenceRecord> out;
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    out.push_back(Commit(std::move(proposals[i]), a, tree.PathFor(i)));
  }
  return out;
}

CumulatedRenewal CumulateRenew(const std::vector<EvidenceRecord>& members,
                               TimeInstant t, HashFunctionId h,
                               const DocumentSet& docs, Attester& attester,
                               const ProtectContext& ctx) {
  if (members.empty()) throw Error(Errc::kEmptyInput, "no members to renew");
  for (const EvidenceRecord& m : members) {
    if (m.kind == StructureKind::kNaw && attester.kind() != IssuerKind::kNa) {
      throw Error(Errc::kIncompatible,
                  "NAW records can only be renewed by a notarial authority");
    }
  }
  CountingAttester counter(attester);
  CumulatedRenewal out;
  out.records.resize(members.size());

  bool hash_renewal = false;
  for (const EvidenceRecord& m : members) {
    hash_renewal = hash_renewal || HeadHash(m) != h;
  }

  if (hash_renewal) {
    // Every member re-hashes; the outputs go into fresh shared trees. NAW
    // members keep their original time, so they are attested apart from the
    // others.
    std::vector<std::size_t> regular_index;
    std::map<std::int64_t, std::vector<std::size_t>> naw_groups;
    std::vector<Proposal> proposals;
    for (std::size_t i = 0; i < members.size(); ++i) {
      proposals.push_back(ProposeRenewal(members[i], h, t, docs, ctx));
      if (members[i].kind == StructureKind::kNaw) {
        naw_groups[std::get<NawState>(members[i].state).original_time.seconds]
            .push_back(i);
      } else {
        regular_index.push_back(i);
      }
    }
    auto run = [&](const std::vector<std::size_t>& index) {
      std::vector<Proposal> group;
      for (std::size_t i : index) group.push_back(std::move(proposals[i]));
      std::vector<EvidenceRecord> done = CumulateAttest(std::move(group), counter, t);
      for (std::size_t k = 0; k < index.size(); ++k) {
        out.records[index[k]] = std::move(done[k]);
      }
    };
    if (!regular_index.empty()) run(regular_index);
    for (const auto& [t0, index] : naw_groups) run(index);
    out.attestations_issued = counter.count();
    return out;
  }

  // Attestation renewal. Sequences renew on their own; the others are
  // grouped by the head attestation they share.
  std::map<Bytes, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (IsSequence(members[i].kind)) {
      out.records[i] = Renew(members[i], t, h, docs, counter, ctx);
    } else {
      groups[HeadAttestation(members[i]).Encode()].push_back(i);
    }
  }
  for (const auto& [key, index] : groups) {
    bool has_naw = false;
    for (std::size_t i : index) has_naw = has_naw || members[i].kind == StructureKind::kNaw;
    const EvidenceRecord& first = members[index[0]];
    if (has_naw && (index.size() > 1 || HeadCumulation(first).has_value())) {
      // The notary re-attests the shared digest under its current key.
      const Attestation& head = HeadAttestation(first);
      AttestRequest request;
      request.payload_digest = head.attested_digest;
      request.hash_fn = head.hash_fn;
      request.requested_time = t;
      NaExtras x;
      x.operation = NaOperation::kRewrap;
      x.prior = head;
      x.prior_verification = ctx.source.Collect(head.issuer_cert, t);
      request.na_extras = std::move(x);
      Attestation a = counter.Attest(request, t);
      for (std::size_t i : index) {
        out.records[i] = members[i];
        ReplaceHead(out.records[i], a);
      }
      continue;
    }
    if (index.size() == 1) {
      out.records[index[0]] = Renew(first, t, h, docs, counter, ctx);
      continue;
    }
    // Members sharing a head propose identical renewal bytes.
    std::vector<Proposal> proposals;
    for (std::size_t i : index) {
      proposals.push_back(ProposeRenewal(members[i], h, t, docs, ctx));
      if (proposals.back().attested_bytes != proposals.front().attested_bytes) {
        throw Error(Errc::kUsage, "grouped members propose different renewals");
      }
    }
    Attestation a =
        counter.Attest(MakeRequest(proposals.front(), counter.kind()), t);
    for (std::size_t k = 0; k < index.size(); ++k) {
      out.records[index[k]] = Commit(std::move(proposals[k]), a);
    }
  }
  out.attestations_issued = counter.count();
  return out;
}

EvidenceRecord AttachDocset(const std::optional<EvidenceRecord>& record,
                            StructureKind kind,
                            const std::vector<std::string>& names,
                            TimeInstant t, HashFunctionId h,
                            const DocumentSet& docs, Attester& attester,
                            const ProtectContext& ctx) {
  if (names.empty()) throw Error(Errc::kEmptyInput, "no documents to attach");
  if (kind != StructureKind::kMds && kind != StructureKind::kSls &&
      kind != StructureKind::kNaw) {
    throw Error(Errc::kUsage, "document sets attach to MDS, SLS or NAW only");
  }
  if (!record.has_value()) {
    return Execute(ProposeInit(kind, attester.kind(), DocumentItems(names), true,
                               h, t, docs, ctx),
                   attester);
  }
  if (record->kind != kind) {
    throw Error(Errc::kUsage, "record kind differs from the requested structure");
  }
  if (kind == StructureKind::kNaw) {
    throw Error(Errc::kIncompatible,
                "a NAW record protects a fixed document set; create a new one");
  }
  return Execute(ProposeAdd(*record, DocumentItems(names), true, h, t, docs, ctx),
                 attester);
}

}  // namespace mops
