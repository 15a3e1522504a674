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
#ifndef MOPS_WIZARD_H_
#define MOPS_WIZARD_H_

#include <array>
#include <string>
#include <string_view>

#include "mops/attestation.h"
#include "mops/crypto.h"
#include "mops/record.h"

namespace mops {

enum class Retrieval : std::uint8_t { kSingle = 0, kRanges, kAll };
enum class Storage : std::uint8_t { kFew = 0, kSets, kSequential };
enum class Trust : std::uint8_t { kAcceptsNa = 0, kMinimal };

inline constexpr std::array kAllRetrievals = {Retrieval::kSingle, Retrieval::kRanges,
                                              Retrieval::kAll};
inline constexpr std::array kAllStorages = {Storage::kFew, Storage::kSets,
                                            Storage::kSequential};
inline constexpr std::array kAllTrusts = {Trust::kAcceptsNa, Trust::kMinimal};

std::string_view RetrievalName(Retrieval r);  // single, ranges, all
std::string_view StorageName(Storage s);      // few, sets, sequential
std::string_view TrustName(Trust t);          // accepts-na, minimal
// Throw Error(kUsage).
Retrieval ParseRetrieval(std::string_view name);
Storage ParseStorage(std::string_view name);
Trust ParseTrust(std::string_view name);

struct WizardAnswers {
  Retrieval retrieval = Retrieval::kSingle;
  Storage storage = Storage::kFew;
  Trust trust = Trust::kMinimal;
};

struct SchemeConfig {
  StructureKind structure = StructureKind::kAs;
  IssuerKind attester = IssuerKind::kTsa;
  // One record per document, the records sharing attestations (AS, NAW).
  bool cumulate = false;
  // Documents arriving together go into one element under a Merkle root
  // (MDS, SLS, NAW).
  bool batch = false;
  HashFunctionId hash_fn = HashFunctionId::kSha256;
  std::string endpoint;  // host:port of the attester; empty: in-process
  int renewal_threshold_days = 30;

  bool operator==(const SchemeConfig&) const = default;
};

// Throws Error(kIncompatible) for combinations that cannot work: NAW needs
// a notary, cumulation needs AS or NAW, batching needs MDS, SLS or NAW.
void ValidateScheme(const SchemeConfig& config);

// Total over the 18 answer combinations.
//
//   retrieval \ storage   few            sets                 sequential
//   single               AS | NAW       AS|NAW cumulated     SLS
//   ranges               MDS            MDS batched          MDS
//   all                  MTS            MTS                  MDS
//
// "AS | NAW": NAW with its notary if the NA may be trusted, AS otherwise.
// Every other scheme uses a timestamp authority.
SchemeConfig WizardSelect(const WizardAnswers& answers);

// One line, e.g. "structure=SLS attester=TSA cumulate=0 batch=0 hash=SHA-256".
std::string DescribeScheme(const SchemeConfig& config);

}  // namespace mops

#endif  // MOPS_WIZARD_H_
