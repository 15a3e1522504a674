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
#ifndef MOPS_SIMULATION_H_
#define MOPS_SIMULATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mops/document.h"
#include "mops/inventory.h"
#include "mops/record.h"

namespace mops {

// The hash function a renewal at `at` should use: `current` while it and
// its paired signature parameters stay secure for longer than the threshold,
// otherwise the weakest stronger function that does.
HashFunctionId SelectHash(const SecurityInventory& inv, HashFunctionId current,
                          TimeInstant at, int threshold_days);

struct SimulationConfig {
  StructureKind structure = StructureKind::kAs;
  int years = 100;
  TimeInstant start = FromDate(2020, 1, 1);
  std::uint64_t seed = 1;
  int renewal_threshold_days = 30;
  std::size_t document_size = 1024;
  std::size_t mts_documents = 100;
};

// Access patterns:
//   AS, NAW   one document, protected at the start
//   MTS       mts_documents documents, protected together at the start
//   MDS, SLS  one document at the start and one more on every anniversary
// The clock advances one day at a time. Each day the scheduler renews if the
// head attestation ends within the threshold or its hash function needs
// replacing, and adds the year's document on anniversaries.
struct SimulationReport {
  SimulationConfig config;
  TimeInstant end;
  std::size_t documents = 0;
  std::size_t additions = 0;
  std::size_t attestation_renewals = 0;
  std::size_t hash_renewals = 0;
  std::vector<TimeInstant> hash_renewal_times;
  std::size_t attestations = 0;  // stored in the final record
  std::size_t elements = 0;      // chain length; 1 for NAW
  std::size_t proof_size = 0;    // serialized record, bytes
  bool all_valid = false;        // whole proof at `end`
  // The scenario document: AS/NAW the only one, MTS the first, MDS the last
  // added, SLS the first added.
  std::string scenario_document;
  bool scenario_valid = false;
  std::size_t attestations_touched = 0;

  EvidenceRecord record;
  DocumentSet docs;

  // Line-oriented key=value, deterministic in the config.
  std::string ToText() const;
};

SimulationReport Simulate(const SimulationConfig& config);

}  // namespace mops

#endif  // MOPS_SIMULATION_H_
