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
#ifndef MOPS_CONTAINER_H_
#define MOPS_CONTAINER_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mops/document.h"
#include "mops/record.h"

namespace mops {

inline constexpr std::string_view kContainerExtension = ".mops.zip";

struct ContainerDocument {
  std::string folder;  // empty: archive root, no evidence possible
  std::string name;
  InputData data;

  bool operator==(const ContainerDocument&) const = default;
};

// The transfer archive. Layout:
//   <folder>/<name>            document bytes
//   <folder>/<name>.sig.json   its detached signature
//   <folder>.er.json           evidence covering every document of the folder
struct MopsContainer {
  std::vector<ContainerDocument> documents;
  std::map<std::string, EvidenceRecord> evidence;  // by folder

  // Documents of one folder, keyed by name as the folder's record sees them.
  DocumentSet Folder(const std::string& folder) const;
  std::vector<std::string> Folders() const;

  bool operator==(const MopsContainer&) const = default;
};

// Throws Error(kContainerMismatch) for a signature that does not match its
// document, evidence without a folder, or evidence that misses or invents a
// folder document; Error(kUsage) for unusable names.
Bytes ExportContainer(const MopsContainer& container);

enum class ImportCheck {
  kStrict,
  // Skips the document/signature match so a verifier can report tampered
  // documents instead of refusing the archive.
  kLayoutOnly,
};

// Same checks as export, plus documents without signature and signature
// files without document. Entries are read in archive order.
MopsContainer ImportContainer(ByteView archive,
                              ImportCheck check = ImportCheck::kStrict);

}  // namespace mops

#endif  // MOPS_CONTAINER_H_
