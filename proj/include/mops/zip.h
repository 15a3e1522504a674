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
#ifndef MOPS_ZIP_H_
#define MOPS_ZIP_H_

#include <string>
#include <vector>

#include "mops/bytes.h"

namespace mops {

struct ZipEntry {
  std::string name;
  Bytes content;

  bool operator==(const ZipEntry&) const = default;
};

// Writes a plain ZIP archive (deflate, no extra fields, fixed 1980-01-01
// timestamps), so equal entry lists produce equal bytes.
Bytes WriteZip(const std::vector<ZipEntry>& entries);

// Reads stored and deflated entries in central-directory order. Throws
// Error(kParse) on anything else: encryption, ZIP64, spanning, bad CRCs,
// duplicate names.
std::vector<ZipEntry> ReadZip(ByteView archive);

}  // namespace mops

#endif  // MOPS_ZIP_H_
