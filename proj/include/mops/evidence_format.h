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
#ifndef MOPS_EVIDENCE_FORMAT_H_
#define MOPS_EVIDENCE_FORMAT_H_

#include <string>
#include <string_view>

#include "mops/bytes.h"
#include "mops/document.h"
#include "mops/record.h"

namespace mops {

inline constexpr std::string_view kRecordExtension = ".er.json";
inline constexpr std::string_view kSignatureExtension = ".sig.json";

// Canonical JSON text: fixed key order, two-space indent, lowercase hex for
// binary values, ISO-8601 UTC times, trailing newline. Serialization is a
// pure function of the value.
std::string SerializeRecord(const EvidenceRecord& record);

// Throws Error(kParse) with the JSON pointer of the offending value. Unknown
// keys are rejected.
EvidenceRecord ParseRecord(std::string_view text);
EvidenceRecord ParseRecord(ByteView bytes);

std::string SerializeSignature(const DocumentSignature& signature);
DocumentSignature ParseSignature(std::string_view text);

}  // namespace mops

#endif  // MOPS_EVIDENCE_FORMAT_H_
