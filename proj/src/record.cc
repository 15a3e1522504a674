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
#include "mops/record.h"

#include "mops/error.h"
#include "mops/evidence_format.h"

namespace mops {

namespace {

template <typename T>
T ParseName(std::string_view name, std::initializer_list<T> values,
            std::string_view (*to_name)(T), const char* what) {
  for (T v : values) {
    if (to_name(v) == name) return v;
  }
  throw Error(Errc::kParse,
              std::string("unknown ") + what + " '" + std::string(name) + "'");
}

}  // namespace

std::string_view StructureName(StructureKind kind) {
  switch (kind) {
    case StructureKind::kAs: return "AS";
    case StructureKind::kMts: return "MTS";
    case StructureKind::kMds: return "MDS";
    case StructureKind::kSls: return "SLS";
    case StructureKind::kNaw: return "NAW";
  }
  return "?";
}

StructureKind ParseStructureName(std::string_view name) {
  return ParseName(name,
                   {StructureKind::kAs, StructureKind::kMts, StructureKind::kMds,
                    StructureKind::kSls, StructureKind::kNaw},
                   &StructureName, "structure");
}

std::string_view ElementKindName(ElementKind kind) {
  switch (kind) {
    case ElementKind::kInitial: return "initial";
    case ElementKind::kAttestationRenewal: return "attestation-renewal";
    case ElementKind::kHashRenewal: return "hash-renewal";
    case ElementKind::kAdd: return "add";
    case ElementKind::kHashAdd: return "hash-add";
  }
  return "?";
}

ElementKind ParseElementKind(std::string_view name) {
  return ParseName(name,
                   {ElementKind::kInitial, ElementKind::kAttestationRenewal,
                    ElementKind::kHashRenewal, ElementKind::kAdd,
                    ElementKind::kHashAdd},
                   &ElementKindName, "element kind");
}

std::string_view ItemKindName(ItemKind kind) {
  switch (kind) {
    case ItemKind::kDocument: return "document";
    case ItemKind::kMigratedDocument: return "migrated-document";
    case ItemKind::kMigratedHead: return "migrated-head";
  }
  return "?";
}

ItemKind ParseItemKind(std::string_view name) {
  return ParseName(name,
                   {ItemKind::kDocument, ItemKind::kMigratedDocument,
                    ItemKind::kMigratedHead},
                   &ItemKindName, "item kind");
}

std::vector<Item> AllItems(const EvidenceRecord& record) {
  std::vector<Item> items;
  auto add = [&](const Payload& p) {
    items.insert(items.end(), p.items.begin(), p.items.end());
  };
  if (const auto* as = std::get_if<AsState>(&record.state)) {
    add(as->payload);
  } else if (const auto* mts = std::get_if<MtsState>(&record.state)) {
    items = mts->items;
  } else if (const auto* seq = std::get_if<SequenceState>(&record.state)) {
    for (const Element& e : seq->chain) {
      if (e.payload.has_value()) add(*e.payload);
    }
  } else {
    add(std::get<NawState>(record.state).subject);
  }
  return items;
}

std::vector<std::string> DocumentNames(const EvidenceRecord& record) {
  std::vector<std::string> names;
  for (const Item& item : AllItems(record)) names.push_back(item.name);
  return names;
}

const std::vector<Element>& Chain(const EvidenceRecord& record) {
  if (const auto* as = std::get_if<AsState>(&record.state)) return as->chain;
  if (const auto* mts = std::get_if<MtsState>(&record.state)) return mts->chain;
  if (const auto* seq = std::get_if<SequenceState>(&record.state)) {
    return seq->chain;
  }
  throw Error(Errc::kUsage, "NAW records hold no attestation chain");
}

std::vector<Element>& MutableChain(EvidenceRecord& record) {
  return const_cast<std::vector<Element>&>(Chain(record));
}

const Attestation& HeadAttestation(const EvidenceRecord& record) {
  if (const auto* naw = std::get_if<NawState>(&record.state)) {
    return naw->attestation;
  }
  const std::vector<Element>& chain = Chain(record);
  if (chain.empty()) throw Error(Errc::kParse, "empty attestation chain");
  return chain.back().attestation;
}

HashFunctionId HeadHash(const EvidenceRecord& record) {
  return HeadAttestation(record).hash_fn;
}

std::size_t AttestationCount(const EvidenceRecord& record) {
  if (std::holds_alternative<NawState>(record.state)) return 1;
  return Chain(record).size();
}

std::size_t HashRenewalCount(const EvidenceRecord& record) {
  if (const auto* naw = std::get_if<NawState>(&record.state)) {
    return naw->history.empty() ? 0 : naw->history.size() - 1;
  }
  std::size_t n = 0;
  for (const Element& e : Chain(record)) {
    if (e.kind == ElementKind::kHashRenewal || e.kind == ElementKind::kHashAdd) {
      ++n;
    }
  }
  return n;
}

bool IsTreeElement(StructureKind kind, const Element& e) {
  switch (kind) {
    case StructureKind::kMts:
      return e.kind == ElementKind::kInitial || e.kind == ElementKind::kHashRenewal;
    case StructureKind::kMds:
    case StructureKind::kSls:
      return e.kind == ElementKind::kHashRenewal || e.kind == ElementKind::kHashAdd;
    default:
      return false;
  }
}

std::size_t SlsLinkCount(std::size_t index) {
  if (index == 0) return 0;
  std::size_t n = 1;
  while ((index & 1) == 0) {
    index >>= 1;
    ++n;
  }
  return n;
}

bool ContentResolver::Available(const Item& item) const {
  if (item.kind == ItemKind::kMigratedHead) {
    return item.receipt < record_.receipts.size();
  }
  return documents_.count(item.name) != 0 &&
         (item.kind == ItemKind::kDocument ||
          item.receipt < record_.receipts.size());
}

Bytes ContentResolver::Content(const Item& item) const {
  if (item.kind != ItemKind::kDocument &&
      item.receipt >= record_.receipts.size()) {
    throw Error(Errc::kParse, "item refers to a missing migration receipt");
  }
  if (item.kind == ItemKind::kMigratedHead) {
    auto it = head_cache_.find(item.receipt);
    if (it != head_cache_.end()) return it->second;
    const MigrationReceipt& r = record_.receipts[item.receipt];
    if (!r.source_head_verification.has_value()) {
      throw Error(Errc::kParse, "migration receipt lacks head verification data");
    }
    EvidenceRecord source = ParseRecord(ToBytes(r.source_record));
    Bytes content = Concat({HeadAttestation(source).Encode(),
                            r.source_head_verification->Encode()});
    head_cache_.emplace(item.receipt, content);
    return content;
  }
  auto doc = documents_.find(item.name);
  if (doc == documents_.end()) {
    throw Error(Errc::kUsage, "document '" + item.name + "' not supplied");
  }
  if (item.kind == ItemKind::kDocument) return doc->second.Encode();
  const MigrationReceipt& r = record_.receipts[item.receipt];
  if (!r.source_head_verification.has_value()) {
    throw Error(Errc::kParse, "migration receipt lacks head verification data");
  }
  return Concat({doc->second.Encode(), ToBytes(r.source_record),
                 r.source_head_verification->Encode()});
}

Bytes PayloadData(const Payload& payload, const ContentResolver& resolver) {
  if (payload.batch) return payload.batch_root;
  if (payload.items.size() != 1) {
    throw Error(Errc::kParse, "non-batch payload must hold exactly one item");
  }
  return resolver.Content(payload.items[0]);
}

Payload MakeBatch(std::vector<Item> items, HashFunctionId hash_fn,
                  const ContentResolver& resolver) {
  if (items.empty()) throw Error(Errc::kEmptyInput, "empty batch");
  std::vector<Bytes> leaves;
  leaves.reserve(items.size());
  for (const Item& item : items) leaves.push_back(resolver.Content(item));
  MerkleTree tree(hash_fn, leaves);
  Payload p;
  p.items = std::move(items);
  p.batch = true;
  p.batch_root = tree.root();
  for (std::size_t i = 0; i < p.items.size(); ++i) p.paths.push_back(tree.PathFor(i));
  return p;
}

}  // namespace mops
