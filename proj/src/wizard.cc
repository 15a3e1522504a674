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
#include "mops/wizard.h"

#include "mops/error.h"

namespace mops {

std::string_view RetrievalName(Retrieval r) {
  switch (r) {
    case Retrieval::kSingle: return "single";
    case Retrieval::kRanges: return "ranges";
    case Retrieval::kAll: return "all";
  }
  return "?";
}

std::string_view StorageName(Storage s) {
  switch (s) {
    case Storage::kFew: return "few";
    case Storage::kSets: return "sets";
    case Storage::kSequential: return "sequential";
  }
  return "?";
}

std::string_view TrustName(Trust t) {
  return t == Trust::kAcceptsNa ? "accepts-na" : "minimal";
}

Retrieval ParseRetrieval(std::string_view name) {
  for (Retrieval r : kAllRetrievals) if (RetrievalName(r) == name) return r;
  throw Error(Errc::kUsage, "retrieval must be single, ranges or all");
}

Storage ParseStorage(std::string_view name) {
  for (Storage s : kAllStorages) if (StorageName(s) == name) return s;
  throw Error(Errc::kUsage, "storage must be few, sets or sequential");
}

Trust ParseTrust(std::string_view name) {
  for (Trust t : kAllTrusts) if (TrustName(t) == name) return t;
  throw Error(Errc::kUsage, "trust must be accepts-na or minimal");
}

void ValidateScheme(const SchemeConfig& c) {
  if (c.structure == StructureKind::kNaw && c.attester != IssuerKind::kNa) {
    throw Error(Errc::kIncompatible,
                "NAW keeps the original time only a notary may state; "
                "a timestamp authority cannot issue its attestations");
  }
  if (c.cumulate && c.structure != StructureKind::kAs &&
      c.structure != StructureKind::kNaw) {
    throw Error(Errc::kIncompatible, "per-document cumulation applies to AS and NAW");
  }
  if (c.batch && (c.structure == StructureKind::kAs ||
                  c.structure == StructureKind::kMts)) {
    throw Error(Errc::kIncompatible, "batch attach applies to MDS, SLS and NAW");
  }
  if (c.renewal_threshold_days < 0) {
    throw Error(Errc::kUsage, "renewal threshold must not be negative");
  }
}

SchemeConfig WizardSelect(const WizardAnswers& a) {
  SchemeConfig c;
  const bool na = a.trust == Trust::kAcceptsNa;
  switch (a.retrieval) {
    case Retrieval::kSingle:
      if (a.storage == Storage::kSequential) {
        c.structure = StructureKind::kSls;
      } else {
        c.structure = na ? StructureKind::kNaw : StructureKind::kAs;
        c.cumulate = a.storage == Storage::kSets;
      }
      break;
    case Retrieval::kRanges:
      c.structure = StructureKind::kMds;
      c.batch = a.storage == Storage::kSets;
      break;
    case Retrieval::kAll:
      c.structure = a.storage == Storage::kSequential ? StructureKind::kMds
                                                      : StructureKind::kMts;
      break;
  }
  if (c.structure == StructureKind::kNaw) c.attester = IssuerKind::kNa;
  ValidateScheme(c);
  return c;
}

std::string DescribeScheme(const SchemeConfig& c) {
  std::string s = "structure=" + std::string(StructureName(c.structure)) +
                  " attester=" + std::string(IssuerKindName(c.attester)) +
                  " cumulate=" + (c.cumulate ? "1" : "0") +
                  " batch=" + (c.batch ? "1" : "0") +
                  " hash=" + std::string(HashName(c.hash_fn)) +
                  " threshold-days=" + std::to_string(c.renewal_threshold_days);
  if (!c.endpoint.empty()) s += " endpoint=" + c.endpoint;
  return s;
}

}  // namespace mops
