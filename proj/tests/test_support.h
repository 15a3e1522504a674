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

#ifndef MOPS_TESTS_TEST_SUPPORT_H_
#define MOPS_TESTS_TEST_SUPPORT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mops/attestation.h"
#include "mops/container.h"
#include "mops/document.h"
#include "mops/inventory.h"
#include "mops/record.h"
#include "mops/structures.h"
#include "mops/verify.h"
#include "mops/world.h"

namespace mops::testing {

inline constexpr HashFunctionId kH256 = HashFunctionId::kSha256;
inline constexpr HashFunctionId kH384 = HashFunctionId::kSha384;
inline constexpr HashFunctionId kH512 = HashFunctionId::kSha512;

// A deterministic world with both authorities and a few signed documents.
struct Fixture {
  Fixture();

  // Signs content as "signer" at t0 under SHA-256 and stores it as `name`.
  void AddDoc(const std::string& name, const std::string& content);
  // Adds n documents named prefix0 .. prefix{n-1}; returns their names.
  std::vector<std::string> AddDocs(const std::string& prefix, std::size_t n);
  Attester& AttesterFor(StructureKind kind);
  // 20 days before the head attestation stops being valid.
  TimeInstant NextRenewal(const EvidenceRecord& record, TimeInstant now) const;
  Verdict Verify(const EvidenceRecord& record, TimeInstant at);
  Verdict Verify(const EvidenceRecord& record, const DocumentSet& set,
                 TimeInstant at);

  PkiWorld world;
  SecurityInventory inv;
  TimestampAuthority tsa;
  NotarialAuthority na;
  ProtectContext ctx;
  DocumentSet docs;
  TimeInstant t0;
};

std::string CategoryList(const Verdict& verdict);
std::string DescribeVerdict(const Verdict& verdict);

// Structurally arbitrary values that the strict JSON reader accepts. They are
// not meant to verify.
Bytes RandomBytes(std::mt19937_64& rng, std::size_t min, std::size_t max);
EvidenceRecord RandomRecord(std::mt19937_64& rng,
                            const std::vector<std::string>& names,
                            int depth = 1);
// Documents carry genuine signatures, so strict import accepts them.
MopsContainer RandomContainer(std::mt19937_64& rng, Fixture& fx);

// One corruptible part of a proof or of its documents, as canonical binary
// encoding. apply() decodes a modified encoding into the copies it gets and
// throws if the encoding no longer decodes.
struct FaultTarget {
  std::string group;  // document, attestation, verification, path, link, ...
  std::string label;
  Bytes encoding;
  std::function<void(EvidenceRecord&, DocumentSet&, const Bytes&)> apply;
};

std::vector<FaultTarget> FaultTargets(const EvidenceRecord& record,
                                      const DocumentSet& docs);

// Categories a verifier may correctly report for a corrupted group.
std::set<Category> ExpectedCategories(const std::string& group);

struct FaultStats {
  std::size_t flips = 0;
  std::size_t undecodable = 0;     // rejected by the decoder: malformed
  std::size_t undetected = 0;      // verdict stayed valid
  std::size_t wrong_category = 0;  // invalid, but no expected category
  std::size_t verifier_threw = 0;
  std::map<std::string, std::size_t> flips_by_group;
  // group -> reported categories -> count
  std::map<std::string, std::map<std::string, std::size_t>> outcomes;
  std::vector<std::string> failures;  // first few, for diagnosis

  bool ok() const {
    return flips > 0 && undetected == 0 && wrong_category == 0 &&
           verifier_threw == 0;
  }
};

// A small honest proof for fault injection: AS and NAW over one document,
// MTS, MDS and SLS over three (added one by one), an attestation renewal for
// AS and MTS and a hash renewal to SHA-384. Sets *verify_at to a time at which it is valid.
EvidenceRecord FaultFixture(Fixture& fx, StructureKind kind,
                            TimeInstant* verify_at);

// Flips every bit of every target once and verifies the result at `at`.
FaultStats InjectFaults(Fixture& fx, const EvidenceRecord& record,
                        const DocumentSet& docs, TimeInstant at);

// Trace consumed by tests/oracle/attested_bytes_oracle.py.
class OracleTrace {
 public:
  void AddDocuments(const DocumentSet& docs);
  void AddStep(const std::string& step, const Proposal& proposal,
               const EvidenceRecord& committed);
  std::string Dump() const;

 private:
  std::string documents_;
  std::vector<std::string> steps_;
};

// Runs a shell command; returns its exit status and captured stdout+stderr.
int RunCommand(const std::string& command, std::string* output);

std::string TempDir(const std::string& tag);

}  // namespace mops::testing

#endif  // MOPS_TESTS_TEST_SUPPORT_H_
