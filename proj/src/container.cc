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
#include "mops/container.h"

#include <set>

#include "mops/error.h"
#include "mops/evidence_format.h"
#include "mops/zip.h"

namespace mops {

namespace {

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

void RequireName(const std::string& s, bool allow_empty, std::string_view what) {
  const bool bad = (s.empty() && !allow_empty) || s == "." || s == ".." ||
                   s.find('/') != std::string::npos ||
                   s.find('\\') != std::string::npos ||
                   s.find('\0') != std::string::npos ||
                   EndsWith(s, kSignatureExtension) || EndsWith(s, kRecordExtension);
  if (bad) throw Error(Errc::kUsage, "unusable " + std::string(what) + " name '" + s + "'");
}

std::string DocPath(const ContainerDocument& d) {
  return d.folder.empty() ? d.name : d.folder + "/" + d.name;
}

// Shared by export and import: the folder/evidence consistency rules.
void CheckConsistency(const MopsContainer& c, bool signatures) {
  std::map<std::string, std::set<std::string>> folders;
  for (const ContainerDocument& d : c.documents) {
    RequireName(d.folder, true, "folder");
    RequireName(d.name, false, "document");
    if (!folders[d.folder].insert(d.name).second) {
      throw Error(Errc::kContainerMismatch, "duplicate document '" + DocPath(d) + "'");
    }
    if (signatures && !VerifyDocumentSignature(d.data.document, d.data.signature)) {
      throw Error(Errc::kContainerMismatch,
                  "signature does not match document '" + DocPath(d) + "'");
    }
  }
  for (const auto& [folder, record] : c.evidence) {
    RequireName(folder, false, "folder");
    auto it = folders.find(folder);
    if (it == folders.end()) {
      throw Error(Errc::kContainerMismatch,
                  "evidence for folder '" + folder + "' without documents");
    }
    std::set<std::string> covered;
    for (const std::string& n : DocumentNames(record)) covered.insert(n);
    for (const std::string& n : covered) {
      if (!it->second.count(n)) {
        throw Error(Errc::kContainerMismatch, "evidence of folder '" + folder +
                                                  "' covers missing document '" + n + "'");
      }
    }
    for (const std::string& n : it->second) {
      if (!covered.count(n)) {
        throw Error(Errc::kContainerMismatch, "document '" + folder + "/" + n +
                                                  "' is not covered by the folder evidence");
      }
    }
  }
}

}  // namespace

DocumentSet MopsContainer::Folder(const std::string& folder) const {
  DocumentSet out;
  for (const ContainerDocument& d : documents) {
    if (d.folder == folder) out.emplace(d.name, d.data);
  }
  return out;
}

std::vector<std::string> MopsContainer::Folders() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const ContainerDocument& d : documents) {
    if (seen.insert(d.folder).second) out.push_back(d.folder);
  }
  return out;
}

Bytes ExportContainer(const MopsContainer& c) {
  CheckConsistency(c, true);
  std::vector<ZipEntry> entries;
  for (const ContainerDocument& d : c.documents) {
    const std::string path = DocPath(d);
    entries.push_back({path, d.data.document});
    entries.push_back({path + std::string(kSignatureExtension),
                       ToBytes(SerializeSignature(d.data.signature))});
  }
  for (const auto& [folder, record] : c.evidence) {
    entries.push_back({folder + std::string(kRecordExtension),
                       ToBytes(SerializeRecord(record))});
  }
  return WriteZip(entries);
}

MopsContainer ImportContainer(ByteView archive, ImportCheck check) {
  std::vector<ZipEntry> entries = ReadZip(archive);
  std::map<std::string, const ZipEntry*> signatures;
  for (const ZipEntry& e : entries) {
    if (EndsWith(e.name, kSignatureExtension)) {
      signatures[e.name.substr(0, e.name.size() - kSignatureExtension.size())] = &e;
    }
  }

  MopsContainer c;
  std::set<std::string> used;
  for (const ZipEntry& e : entries) {
    if (EndsWith(e.name, kSignatureExtension)) continue;
    if (EndsWith(e.name, kRecordExtension)) {
      const std::string folder = e.name.substr(0, e.name.size() - kRecordExtension.size());
      try {
        c.evidence.emplace(folder, ParseRecord(ByteView(e.content)));
      } catch (const Error& err) {
        throw Error(Errc::kParse, e.name + ": " + err.detail());
      }
      continue;
    }
    ContainerDocument d;
    const std::size_t slash = e.name.find('/');
    if (slash == std::string::npos) {
      d.name = e.name;
    } else {
      d.folder = e.name.substr(0, slash);
      d.name = e.name.substr(slash + 1);
    }
    auto sig = signatures.find(e.name);
    if (sig == signatures.end()) {
      throw Error(Errc::kContainerMismatch, "document '" + e.name + "' has no signature file");
    }
    try {
      d.data.signature = ParseSignature(ToString(sig->second->content));
    } catch (const Error& err) {
      throw Error(Errc::kParse, sig->second->name + ": " + err.detail());
    }
    d.data.document = e.content;
    used.insert(e.name);
    c.documents.push_back(std::move(d));
  }
  for (const auto& [path, entry] : signatures) {
    if (!used.count(path)) {
      throw Error(Errc::kContainerMismatch, "signature file '" + entry->name + "' has no document");
    }
  }
  CheckConsistency(c, check == ImportCheck::kStrict);
  return c;
}

}  // namespace mops
