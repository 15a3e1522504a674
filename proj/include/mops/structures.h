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
#ifndef MOPS_STRUCTURES_H_
#define MOPS_STRUCTURES_H_

#include <optional>
#include <string>
#include <vector>

#include "mops/attestation.h"
#include "mops/document.h"
#include "mops/inventory.h"
#include "mops/record.h"

namespace mops {

struct ProtectContext {
  VerificationSource& source;
  const SecurityInventory& inventory;
};

// A prepared step: the record as it will look once the attestation over
// attested_bytes is in place. Splitting preparation from commit lets several
// proposals share one attestation (cumulation).
struct Proposal {
  EvidenceRecord next;
  Bytes attested_bytes;
  HashFunctionId hash_fn = HashFunctionId::kSha256;
  TimeInstant time;
  std::optional<NaExtras> na_extras;  // NAW requests
};

// Initializes a record over items. More than one item requires batch for
// AS/MDS/SLS/NAW; MTS always builds a tree. Throws Error(kIncompatible) for
// NAW with a TSA.
Proposal ProposeInit(StructureKind kind, IssuerKind attester,
                     std::vector<Item> items, bool batch, HashFunctionId hash_fn,
                     TimeInstant t, const DocumentSet& docs,
                     const ProtectContext& ctx,
                     std::vector<MigrationReceipt> receipts = {});

// Attestation renewal if hash_fn equals the head's hash, hash renewal
// otherwise. For MDS/SLS this is the renewal without a new document.
// Throws Error(kRenewalWindowMissed) if the head is no longer valid at t.
Proposal ProposeRenewal(const EvidenceRecord& record, HashFunctionId hash_fn,
                        TimeInstant t, const DocumentSet& docs,
                        const ProtectContext& ctx);

// MDS/SLS: appends a document (or a batch) as the next element. Items may
// refer to receipts in new_receipts, indexed after the existing ones.
Proposal ProposeAdd(const EvidenceRecord& record, std::vector<Item> items,
                    bool batch, HashFunctionId hash_fn, TimeInstant t,
                    const DocumentSet& docs, const ProtectContext& ctx,
                    std::vector<MigrationReceipt> new_receipts = {});

AttestRequest MakeRequest(const Proposal& proposal, IssuerKind attester);

EvidenceRecord Commit(Proposal proposal, const Attestation& attestation,
                      std::optional<AuthPath> cumulation = std::nullopt);

// MakeRequest + Attest + Commit.
EvidenceRecord Execute(Proposal proposal, Attester& attester);

std::vector<Item> DocumentItems(const std::vector<std::string>& names);

// Convenience forms of the procedures above.
EvidenceRecord AsInit(const std::string& name, const DocumentSet& docs,
                      TimeInstant t0, HashFunctionId h0, Attester& attester,
                      const ProtectContext& ctx);
EvidenceRecord MtsInit(const std::vector<std::string>& names,
                       const DocumentSet& docs, TimeInstant t0,
                       HashFunctionId h0, Attester& attester,
                       const ProtectContext& ctx);
EvidenceRecord MdsInit(const std::string& name, const DocumentSet& docs,
                       TimeInstant t0, HashFunctionId h0, Attester& attester,
                       const ProtectContext& ctx);
EvidenceRecord SlsInit(const std::string& name, const DocumentSet& docs,
                       TimeInstant t0, HashFunctionId h0, Attester& attester,
                       const ProtectContext& ctx);
EvidenceRecord NawInit(const std::string& name, const DocumentSet& docs,
                       TimeInstant t0, HashFunctionId h0, Attester& attester,
                       const ProtectContext& ctx);
EvidenceRecord Renew(const EvidenceRecord& record, TimeInstant t,
                     HashFunctionId h, const DocumentSet& docs,
                     Attester& attester, const ProtectContext& ctx);
EvidenceRecord AddDocument(const EvidenceRecord& record, const std::string& name,
                           TimeInstant t, HashFunctionId h,
                           const DocumentSet& docs, Attester& attester,
                           const ProtectContext& ctx);

// Initializes any structure over the named documents. For MDS/SLS without
// batch, the first document initializes and each further one is added.
EvidenceRecord Protect(StructureKind kind, const std::vector<std::string>& names,
                       bool batch, const DocumentSet& docs, TimeInstant t,
                       HashFunctionId h, Attester& attester,
                       const ProtectContext& ctx);

// The end of the head attestation's validity period.
TimeInstant HeadValidityEnd(const EvidenceRecord& record,
                            const ProtectContext& ctx, TimeInstant at);

}  // namespace mops

#endif  // MOPS_STRUCTURES_H_
