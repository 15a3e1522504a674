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
#ifndef MOPS_VERIFY_H_
#define MOPS_VERIFY_H_

#include <optional>
#include <string>
#include <vector>

#include "mops/attestation.h"
#include "mops/document.h"
#include "mops/inventory.h"
#include "mops/record.h"

namespace mops {

struct VerifyOptions {
  TimeInstant at;
  // Verification data for the head attestation. When absent it is collected
  // from the source at `at`.
  std::optional<VerificationData> head_verification;
  // Also check every element, link and slot of the record, not only those on
  // each document's verification walk.
  bool record_integrity = true;
};

struct DocumentVerdict {
  std::string name;
  bool valid = true;
  std::vector<Diagnostic> diagnostics;
  // Distinct attestations verified for this document, migration sources
  // included.
  std::size_t attestations_checked = 0;
};

struct Verdict {
  bool valid = true;
  std::vector<DocumentVerdict> documents;
  std::vector<Diagnostic> record_diagnostics;

  // Every category reported anywhere in the verdict.
  std::vector<Category> Categories() const;
};

Verdict VerifyProof(const EvidenceRecord& record, const DocumentSet& docs,
                    VerificationSource& source, const SecurityInventory& inv,
                    const VerifyOptions& options);

DocumentVerdict VerifyDocument(const EvidenceRecord& record,
                               const std::string& name, const DocumentSet& docs,
                               VerificationSource& source,
                               const SecurityInventory& inv,
                               const VerifyOptions& options);

}  // namespace mops

#endif  // MOPS_VERIFY_H_
