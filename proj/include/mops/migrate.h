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
#ifndef MOPS_MIGRATE_H_
#define MOPS_MIGRATE_H_

#include <optional>
#include <string>
#include <vector>

#include "mops/structures.h"

namespace mops {

// Moves the documents protected by `source` under a sequence-kind target
// (AS, MTS, MDS or SLS). A source protecting one document is carried as its
// head attestation; otherwise each document is carried together with the
// serialized source proof. With `target` (MDS/SLS of kind target_kind) the
// data is appended to it, otherwise a new record is created.
// Throws Error(kInvalidSource) if the source does not verify at t.
EvidenceRecord MigrateToSequence(const EvidenceRecord& source,
                                 StructureKind target_kind,
                                 const std::optional<EvidenceRecord>& target,
                                 TimeInstant t, HashFunctionId h,
                                 const DocumentSet& docs, Attester& attester,
                                 const ProtectContext& ctx);

// Hands the documents of `source` to a notary, which verifies the old proof
// and returns NAW records dated at each document's first attestation. One
// record per document, or a single record over all of them with `batch`.
// Throws Error(kInvalidSource) if the source does not verify at t; notary
// refusals propagate with their own codes.
std::vector<EvidenceRecord> MigrateToNaw(const EvidenceRecord& source,
                                         TimeInstant t, HashFunctionId h,
                                         const DocumentSet& docs,
                                         Attester& notary,
                                         const ProtectContext& ctx,
                                         bool batch = false);

// When the document was first attested, following migration receipts back
// to the original proof. Throws Error(kUsage) for an unknown name.
TimeInstant FirstAttestationTime(const EvidenceRecord& record,
                                 const std::string& name);

}  // namespace mops

#endif  // MOPS_MIGRATE_H_
