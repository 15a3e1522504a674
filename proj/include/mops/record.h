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
#ifndef MOPS_RECORD_H_
#define MOPS_RECORD_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mops/attestation.h"
#include "mops/bytes.h"
#include "mops/document.h"
#include "mops/merkle.h"
#include "mops/pki.h"

namespace mops {

enum class StructureKind : std::uint8_t { kAs = 0, kMts, kMds, kSls, kNaw };

inline constexpr std::array<StructureKind, 5> kAllStructures = {
    StructureKind::kAs, StructureKind::kMts, StructureKind::kMds,
    StructureKind::kSls, StructureKind::kNaw};

std::string_view StructureName(StructureKind kind);
StructureKind ParseStructureName(std::string_view name);

enum class ElementKind : std::uint8_t {
  kInitial = 0,
  kAttestationRenewal,
  kHashRenewal,
  kAdd,      // MDS/SLS: new payload, same hash function
  kHashAdd,  // MDS/SLS: new payload together with a hash renewal
};

std::string_view ElementKindName(ElementKind kind);
ElementKind ParseElementKind(std::string_view name);

enum class ItemKind : std::uint8_t {
  kDocument = 0,
  // A document of a multi-document source proof, carried with that proof.
  kMigratedDocument,
  // The head (a_n, v_n) of a single-document source proof.
  kMigratedHead,
};

std::string_view ItemKindName(ItemKind kind);
ItemKind ParseItemKind(std::string_view name);

struct Item {
  ItemKind kind = ItemKind::kDocument;
  std::string name;
  std::uint32_t receipt = 0;  // index into EvidenceRecord::receipts

  bool operator==(const Item&) const = default;
};

// What one element (or an AS/NAW record) protects: a single item, or a batch
// of items under a Merkle root.
struct Payload {
  std::vector<Item> items;
  bool batch = false;
  Bytes batch_root;              // batch only, under the element's hash
  std::vector<AuthPath> paths;   // batch only, one per item

  bool operator==(const Payload&) const = default;
};

// Membership of a sequence element in a later hash-renewal tree.
struct SlotProof {
  Bytes digest;  // SLS: the payload digest under the tree's hash
  AuthPath path;

  bool operator==(const SlotProof&) const = default;
};

struct Element {
  ElementKind kind = ElementKind::kInitial;
  Attestation attestation;
  // Captured when the next element was appended; absent on the head.
  std::optional<VerificationData> verification;
  // Path into a shared tree when the attestation covers several records.
  std::optional<AuthPath> cumulation;

  // MDS/SLS only.
  std::optional<Payload> payload;
  Bytes payload_digest;          // SLS
  std::vector<SlotProof> slots;  // one per later hash-renewal tree
  std::vector<Bytes> links;      // SLS, level 0 first

  bool operator==(const Element&) const = default;
};

struct AsState {
  Payload payload;
  std::vector<Element> chain;

  bool operator==(const AsState&) const = default;
};

struct MtsState {
  std::vector<Item> items;
  std::vector<std::vector<AuthPath>> paths;  // [item][tree]
  std::vector<Element> chain;

  bool operator==(const MtsState&) const = default;
};

// MDS and SLS.
struct SequenceState {
  std::vector<Element> chain;

  bool operator==(const SequenceState&) const = default;
};

struct NawState {
  Payload subject;
  std::vector<Certificate> certificates;
  std::vector<HashValue> history;
  std::vector<std::vector<AuthPath>> item_paths;  // batch: [history][item]
  TimeInstant original_time;
  Attestation attestation;
  std::optional<AuthPath> cumulation;

  bool operator==(const NawState&) const = default;
};

struct MigrationReceipt {
  StructureKind source_kind = StructureKind::kAs;
  StructureKind target_kind = StructureKind::kAs;
  TimeInstant migrated_at;
  // Serialized source record; empty when the target is NAW (the NA has
  // vouched for it and the old proof is dropped).
  std::string source_record;
  std::optional<VerificationData> source_head_verification;

  bool operator==(const MigrationReceipt&) const = default;
};

inline constexpr std::uint32_t kFormatVersion = 1;

struct EvidenceRecord {
  std::uint32_t format_version = kFormatVersion;
  StructureKind kind = StructureKind::kAs;
  IssuerKind attester = IssuerKind::kTsa;
  TimeInstant created_at;
  std::variant<AsState, MtsState, SequenceState, NawState> state;
  std::vector<MigrationReceipt> receipts;

  bool operator==(const EvidenceRecord&) const = default;
};

// Names of all protected documents, in record order.
std::vector<std::string> DocumentNames(const EvidenceRecord& record);
// All items, in record order.
std::vector<Item> AllItems(const EvidenceRecord& record);
const Attestation& HeadAttestation(const EvidenceRecord& record);
HashFunctionId HeadHash(const EvidenceRecord& record);
// Number of attestations stored in the record.
std::size_t AttestationCount(const EvidenceRecord& record);
// Number of hash renewals (elements or NAW history entries beyond the first).
std::size_t HashRenewalCount(const EvidenceRecord& record);

const std::vector<Element>& Chain(const EvidenceRecord& record);
std::vector<Element>& MutableChain(EvidenceRecord& record);

// True for elements that attest a new Merkle tree over their predecessors.
bool IsTreeElement(StructureKind kind, const Element& e);

// Levels of SLS links stored on element i: trailing zero bits of i.
std::size_t SlsLinkCount(std::size_t index);

// Resolves the byte string an item contributes ("d"): a document's D || s,
// or for migrated items the document and/or the carried source proof.
class ContentResolver {
 public:
  ContentResolver(const EvidenceRecord& record, const DocumentSet& documents)
      : record_(record), documents_(documents) {}

  // Throws Error(kUsage) if the document is not supplied, Error(kParse) if
  // a carried source record cannot be read.
  Bytes Content(const Item& item) const;
  bool Available(const Item& item) const;

  const EvidenceRecord& record() const { return record_; }
  const DocumentSet& documents() const { return documents_; }

 private:
  const EvidenceRecord& record_;
  const DocumentSet& documents_;
  mutable std::map<std::uint32_t, Bytes> head_cache_;
};

// The payload's "d": the item content for a single item, the batch root for
// a batch.
Bytes PayloadData(const Payload& payload, const ContentResolver& resolver);

// Builds a batch payload over items, under hash_fn.
Payload MakeBatch(std::vector<Item> items, HashFunctionId hash_fn,
                  const ContentResolver& resolver);

}  // namespace mops

#endif  // MOPS_RECORD_H_
