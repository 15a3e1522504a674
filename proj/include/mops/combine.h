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
#ifndef MOPS_COMBINE_H_
#define MOPS_COMBINE_H_

#include <optional>
#include <string>
#include <vector>

#include "mops/attestation.h"
#include "mops/structures.h"

namespace mops {

// Forwards to another attester and counts the attestations it issued.
class CountingAttester : public Attester {
 public:
  explicit CountingAttester(Attester& inner) : inner_(inner) {}
  IssuerKind kind() const override { return inner_.kind(); }
  Attestation Attest(const AttestRequest& request, TimeInstant clock) override {
    Attestation a = inner_.Attest(request, clock);
    ++count_;
    return a;
  }
  std::size_t count() const { return count_; }

 private:
  Attester& inner_;
  std::size_t count_ = 0;
};

// Collects proposals of several records and has them attested together: one
// Merkle tree over their attested bytes, one attestation over its root.
class BatchCoordinator {
 public:
  BatchCoordinator(IssuerKind attester, HashFunctionId hash_fn)
      : attester_(attester), hash_fn_(hash_fn) {}

  // Throws Error(kMixedHashFunctions) or, for a NAW proposal queued for a
  // TSA, Error(kIncompatible).
  void Add(Proposal proposal);
  std::size_t size() const { return pending_.size(); }

  // Issues the shared attestation at t and returns the committed records in
  // queue order. The queue is cleared even if attestation fails.
  std::vector<EvidenceRecord> Attest(Attester& attester, TimeInstant t);

 private:
  IssuerKind attester_;
  HashFunctionId hash_fn_;
  std::vector<Proposal> pending_;
};

std::vector<EvidenceRecord> CumulateAttest(std::vector<Proposal> proposals,
                                           Attester& attester, TimeInstant t);

struct CumulatedRenewal {
  std::vector<EvidenceRecord> records;  // same order as the input
  std::size_t attestations_issued = 0;
};

// Renews records protected together. With h equal to a member's current hash
// this is an attestation renewal: sequences renew on their own, the other
// members sharing a head attestation get one new attestation. Otherwise all
// members hash-renew and their outputs are cumulated into a fresh tree.
CumulatedRenewal CumulateRenew(const std::vector<EvidenceRecord>& members,
                               TimeInstant t, HashFunctionId h,
                               const DocumentSet& docs, Attester& attester,
                               const ProtectContext& ctx);

// Protects several documents with one attestation over the root of a tree of
// the documents. Appends to an existing MDS/SLS record, or creates a fresh
// MDS/SLS/NAW record when none is given.
EvidenceRecord AttachDocset(const std::optional<EvidenceRecord>& record,
                            StructureKind kind,
                            const std::vector<std::string>& names,
                            TimeInstant t, HashFunctionId h,
                            const DocumentSet& docs, Attester& attester,
                            const ProtectContext& ctx);

}  // namespace mops

#endif  // MOPS_COMBINE_H_
