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
#include "mops/inventory.h"

#include <algorithm>
#include <sstream>
#include <vector>

#include "mops/error.h"

namespace mops {

std::string PrimitiveName(const Primitive& p) {
  if (const auto* h = std::get_if<HashFunctionId>(&p)) {
    return std::string(HashName(*h));
  }
  return SignatureParamsName(std::get<SignatureParams>(p));
}

Primitive ParsePrimitive(std::string_view name) {
  if (name.substr(0, 4) == "SHA-") return ParseHashName(name);
  return ParseSignatureParams(name);
}

TimeInstant InventoryEntry::EffectiveUntil() const {
  if (key_length_until.has_value()) {
    return std::min(secure_until, *key_length_until);
  }
  return secure_until;
}

const InventoryEntry& SecurityInventory::Entry(const Primitive& p) const {
  auto it = entries_.find(PrimitiveName(p));
  if (it == entries_.end()) {
    throw Error(Errc::kUnknownPrimitive,
                "no inventory entry for " + PrimitiveName(p));
  }
  return it->second;
}

SecurityInventory SecurityInventory::UpdateEntry(const Primitive& p,
                                                 TimeInstant new_until,
                                                 TimeInstant at) const {
  const InventoryEntry& old = Entry(p);
  if (old.EffectiveUntil() < new_until) {
    throw Error(Errc::kLifetimeExtension,
                PrimitiveName(p) + " would be extended to " +
                    FormatTime(new_until));
  }
  SecurityInventory next = *this;
  InventoryEntry& e = next.entries_.at(PrimitiveName(p));
  e.secure_until = std::min(e.secure_until, new_until);
  if (e.key_length_until.has_value()) {
    e.key_length_until = std::min(*e.key_length_until, new_until);
  }
  e.last_updated = at;
  return next;
}

std::string SecurityInventory::ToText() const {
  std::ostringstream out;
  for (const auto& [name, e] : entries_) {
    out << name << '\t' << FormatTime(e.secure_until) << '\t'
        << FormatTime(e.last_updated);
    if (e.key_length_until.has_value()) {
      out << '\t' << FormatTime(*e.key_length_until);
    }
    out << '\n';
  }
  return out.str();
}

SecurityInventory SecurityInventory::ParseText(std::string_view text) {
  SecurityInventory inv;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 3 && cols.size() != 4) {
      throw Error(Errc::kParse,
                  "inventory line " + std::to_string(line_no) + ": column count");
    }
    InventoryEntry e{ParsePrimitive(cols[0]), ParseTime(cols[1]),
                     ParseTime(cols[2]), std::nullopt};
    if (cols.size() == 4) {
      if (std::holds_alternative<HashFunctionId>(e.primitive)) {
        throw Error(Errc::kParse, "key-length date on a hash entry");
      }
      e.key_length_until = ParseTime(cols[3]);
    }
    if (!inv.entries_.emplace(cols[0], e).second) {
      throw Error(Errc::kParse, "duplicate inventory entry " + cols[0]);
    }
  }
  for (HashFunctionId h : kAllHashFunctions) {
    inv.Entry(h);
    inv.Entry(PairedParams(h));
  }
  return inv;
}

SecurityInventory DefaultLenstraInventory() {
  const TimeInstant published = FromDate(2016, 1, 1);
  const TimeInstant horizon = FromDate(kHorizonYear, 1, 1);
  const int years[] = {2038, 2084, kHorizonYear};
  SecurityInventory inv;
  for (std::size_t i = 0; i < kAllHashFunctions.size(); ++i) {
    HashFunctionId h = kAllHashFunctions[i];
    TimeInstant until = FromDate(years[i], 1, 1);
    inv.entries_.emplace(PrimitiveName(h),
                         InventoryEntry{h, until, published, std::nullopt});
    SignatureParams p = PairedParams(h);
    inv.entries_.emplace(PrimitiveName(p),
                         InventoryEntry{p, horizon, published, until});
  }
  return inv;
}

TimeInstant ValidityEstimate(const SecurityInventory& inv,
                             HashFunctionId hash_fn,
                             const Certificate& issuer_cert) {
  const InventoryEntry& scheme = inv.Entry(issuer_cert.params);
  TimeInstant t = std::min(inv.SecureUntil(hash_fn), scheme.secure_until);
  if (scheme.key_length_until.has_value()) {
    t = std::min(t, *scheme.key_length_until);
  }
  return std::min(t, issuer_cert.not_after);
}

}  // namespace mops
