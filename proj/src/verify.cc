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
#include "mops/verify.h"

#include <algorithm>
#include <map>
#include <set>

#include "mops/attested_bytes.h"
#include "mops/error.h"
#include "mops/evidence_format.h"

namespace mops {

namespace {

struct Report {
  bool valid = true;
  std::vector<Diagnostic> diagnostics;
  std::set<std::size_t> touched;
  std::size_t source_touched = 0;

  void Fail(Category c, std::string detail) {
    valid = false;
    diagnostics.push_back({c, std::move(detail)});
  }
};

std::string El(std::size_t i) { return "element " + std::to_string(i) + ": "; }

bool StateMatchesKind(const EvidenceRecord& r) {
  switch (r.kind) {
    case StructureKind::kAs: return std::holds_alternative<AsState>(r.state);
    case StructureKind::kMts: return std::holds_alternative<MtsState>(r.state);
    case StructureKind::kMds:
    case StructureKind::kSls:
      return std::holds_alternative<SequenceState>(r.state);
    case StructureKind::kNaw: return std::holds_alternative<NawState>(r.state);
  }
  return false;
}

struct Location {
  const Item* item = nullptr;
  std::size_t element = 0;  // sequences only
  std::size_t index = 0;    // position within the payload / item list
};

class Verifier {
 public:
  Verifier(const EvidenceRecord& record, const DocumentSet& docs,
           VerificationSource& source, const SecurityInventory& inv,
           const VerifyOptions& options)
      : rec_(record),
        docs_(docs),
        source_(source),
        inv_(inv),
        opts_(options),
        resolver_(record, docs),
        sls_(record.kind == StructureKind::kSls) {
    if (StateMatchesKind(rec_) && !std::holds_alternative<NawState>(rec_.state)) {
      chain_ = &Chain(rec_);
      for (std::size_t i = 0; i < chain_->size(); ++i) {
        if (IsTreeElement(rec_.kind, (*chain_)[i])) trees_.push_back(i);
      }
    }
  }

  DocumentVerdict Document(const std::string& name);
  // Checks every element, link and slot of a sequence record.
  void Integrity(Report& r);

 private:
  std::optional<Location> Find(const std::string& name) const;
  void VerifySource(const Item& item, TimeInstant covered_at, Report& r);
  std::optional<Bytes> Content(const Item& item, Report& r);

  const VerificationData* HeadVd(Report& r);
  const VerificationData* VdFor(std::size_t i, Report& r);
  std::optional<TimeInstant> Estimate(HashFunctionId h, const Certificate& c,
                                      Report& r, const std::string& label);
  bool CheckAttestation(std::size_t key, const Attestation& a,
                        const VerificationData& vd,
                        const std::optional<AuthPath>& cumulation,
                        const Bytes& bytes, Report& r, const std::string& label);
  void CheckElement(std::size_t i, const std::map<std::size_t, Bytes>& roots,
                    const Bytes* as_datum, Report& r);
  void CheckSuccession(std::size_t i, std::size_t next, Report& r);
  void CheckHead(Report& r);
  Bytes BatchDatum(const Payload& p, std::size_t q, HashFunctionId h,
                   const Bytes& content, Report& r, const std::string& label);

  void VerifyAs(const AsState& s, std::size_t q, const Bytes& content, Report& r);
  void VerifyMts(const MtsState& s, std::size_t q, const Bytes& content,
                 Report& r);
  void VerifySequence(std::size_t e, std::size_t q, const Bytes& content,
                      Report& r);
  void VerifyNaw(const NawState& s, const Item& item, std::size_t q,
                 const Bytes& content, Report& r);

  // Sequence helpers.
  const Element& At(std::size_t i) const { return (*chain_)[i]; }
  std::size_t SlotIndex(std::size_t j, std::size_t l) const;
  std::size_t TreesAfter(std::size_t j) const;
  bool TreeBetween(std::size_t j, std::size_t cur) const;
  Bytes Datum(std::size_t j) const;
  std::optional<Bytes> SlotRoot(std::size_t j, std::size_t l, Report& r);
  Bytes TreeRoot(std::size_t l, const std::vector<std::size_t>& refs, Report& r);
  Bytes ElementBytes(std::size_t i, const std::map<std::size_t, Bytes>& roots,
                     const Bytes* as_datum) const;
  std::vector<std::size_t> SlsWalk(std::size_t e);
  void CheckLink(std::size_t cur, std::size_t j, Report& r);

  const EvidenceRecord& rec_;
  const DocumentSet& docs_;
  VerificationSource& source_;
  const SecurityInventory& inv_;
  VerifyOptions opts_;
  ContentResolver resolver_;
  const bool sls_;
  const std::vector<Element>* chain_ = nullptr;
  std::vector<std::size_t> trees_;

  bool head_tried_ = false;
  std::optional<VerificationData> head_vd_;
  std::string head_error_;
  std::map<std::pair<std::size_t, Bytes>, AttestationCheck> memo_;
};

// ---- shared checks -----------------------------------------------------------

const VerificationData* Verifier::HeadVd(Report& r) {
  if (!head_tried_) {
    head_tried_ = true;
    if (opts_.head_verification.has_value()) {
      head_vd_ = opts_.head_verification;
    } else {
      try {
        head_vd_ = source_.Collect(HeadAttestation(rec_).issuer_cert, opts_.at);
      } catch (const Error& e) {
        head_error_ = e.what();
      }
    }
  }
  if (!head_vd_.has_value()) {
    r.Fail(Category::kChainInvalid,
           "no verification data for the head attestation: " + head_error_);
    return nullptr;
  }
  return &*head_vd_;
}

const VerificationData* Verifier::VdFor(std::size_t i, Report& r) {
  if (i + 1 == chain_->size()) return HeadVd(r);
  if (!At(i).verification.has_value()) {
    r.Fail(Category::kMissingData, El(i) + "verification data missing");
    return nullptr;
  }
  return &*At(i).verification;
}

std::optional<TimeInstant> Verifier::Estimate(HashFunctionId h,
                                              const Certificate& c, Report& r,
                                              const std::string& label) {
  try {
    return ValidityEstimate(inv_, h, c);
  } catch (const Error& e) {
    r.Fail(Category::kMalformed, label + e.what());
    return std::nullopt;
  }
}

bool Verifier::CheckAttestation(std::size_t key, const Attestation& a,
                                const VerificationData& vd,
                                const std::optional<AuthPath>& cumulation,
                                const Bytes& bytes, Report& r,
                                const std::string& label) {
  r.touched.insert(key);
  Bytes covered = bytes;
  if (cumulation.has_value()) {
    if (cumulation->hash_fn != a.hash_fn || !PathShapeConsistent(*cumulation)) {
      r.Fail(Category::kMalformed, label + "cumulation path malformed");
      return false;
    }
    covered = attested::Cumulated(a.hash_fn, RecomputeRoot(bytes, *cumulation));
  }
  Bytes digest = Hash(a.hash_fn, covered);
  auto memo_key = std::make_pair(key, digest);
  auto it = memo_.find(memo_key);
  if (it == memo_.end()) {
    it = memo_.emplace(memo_key, VerifyAttestationDigest(a, vd, digest, &inv_))
             .first;
  }
  for (const Diagnostic& d : it->second.diagnostics) {
    r.Fail(d.category, label + d.detail);
  }
  return it->second.valid;
}

void Verifier::CheckSuccession(std::size_t i, std::size_t next, Report& r) {
  const Element& e = At(i);
  const Attestation& an = At(next).attestation;
  if (!e.verification.has_value()) {
    r.Fail(Category::kMissingData, El(i) + "verification data missing");
    return;
  }
  if (an.stated_time < e.attestation.stated_time) {
    r.Fail(Category::kRenewalGap,
           El(next) + "attestation predates the one it renews");
  }
  if (an.stated_time < e.verification->collected_at) {
    r.Fail(Category::kRenewalGap,
           El(i) + "verification data collected after the renewal");
  }
  std::optional<TimeInstant> end =
      Estimate(e.attestation.hash_fn, e.verification->leaf, r, El(i));
  if (end.has_value() && !(an.stated_time < *end)) {
    r.Fail(Category::kRenewalGap,
           El(i) + "attestation expired at " + FormatTime(*end) +
               ", renewed at " + FormatTime(an.stated_time));
  }
}

void Verifier::CheckHead(Report& r) {
  const VerificationData* vd = HeadVd(r);
  if (vd == nullptr) return;
  const Attestation& head = HeadAttestation(rec_);
  std::optional<TimeInstant> end = Estimate(head.hash_fn, vd->leaf, r, "head: ");
  if (end.has_value() && !(opts_.at < *end)) {
    r.Fail(Category::kRenewalGap,
           "head attestation expired at " + FormatTime(*end));
  }
}

std::optional<Bytes> Verifier::Content(const Item& item, Report& r) {
  try {
    return resolver_.Content(item);
  } catch (const Error& e) {
    r.Fail(e.code() == Errc::kUsage ? Category::kMissingData : Category::kMalformed,
           e.what());
    return std::nullopt;
  }
}

Bytes Verifier::BatchDatum(const Payload& p, std::size_t q, HashFunctionId h,
                           const Bytes& content, Report& r,
                           const std::string& label) {
  if (!p.batch) return content;
  if (q >= p.paths.size()) {
    r.Fail(Category::kMalformed, label + "batch path missing");
    return p.batch_root;
  }
  const AuthPath& path = p.paths[q];
  if (path.hash_fn != h || path.leaf_index != q ||
      !PathShapeValid(path, p.items.size())) {
    r.Fail(Category::kMalformed, label + "batch path malformed");
  } else if (RecomputeRoot(content, path) != p.batch_root) {
    r.Fail(Category::kDigestMismatch,
           label + "document does not lead to the batch root");
  }
  return p.batch_root;
}

// ---- document lookup and migration ------------------------------------------

std::optional<Location> Verifier::Find(const std::string& name) const {
  auto in = [&](const std::vector<Item>& items) -> std::optional<std::size_t> {
    for (std::size_t q = 0; q < items.size(); ++q) {
      if (items[q].name == name) return q;
    }
    return std::nullopt;
  };
  if (const auto* as = std::get_if<AsState>(&rec_.state)) {
    if (auto q = in(as->payload.items)) return Location{&as->payload.items[*q], 0, *q};
  } else if (const auto* mts = std::get_if<MtsState>(&rec_.state)) {
    if (auto q = in(mts->items)) return Location{&mts->items[*q], 0, *q};
  } else if (const auto* seq = std::get_if<SequenceState>(&rec_.state)) {
    for (std::size_t e = 0; e < seq->chain.size(); ++e) {
      const auto& p = seq->chain[e].payload;
      if (!p.has_value()) continue;
      if (auto q = in(p->items)) return Location{&p->items[*q], e, *q};
    }
  } else {
    const auto& naw = std::get<NawState>(rec_.state);
    if (auto q = in(naw.subject.items)) return Location{&naw.subject.items[*q], 0, *q};
  }
  return std::nullopt;
}

void Verifier::VerifySource(const Item& item, TimeInstant covered_at, Report& r) {
  if (item.receipt >= rec_.receipts.size()) {
    r.Fail(Category::kMalformed, "migration receipt missing");
    return;
  }
  const MigrationReceipt& m = rec_.receipts[item.receipt];
  if (m.source_record.empty() || !m.source_head_verification.has_value()) {
    r.Fail(Category::kMissingData, "migration receipt carries no source proof");
    return;
  }
  EvidenceRecord src;
  try {
    src = ParseRecord(std::string_view(m.source_record));
  } catch (const Error& e) {
    r.Fail(Category::kMalformed, std::string("migration source: ") + e.what());
    return;
  }
  if (m.source_kind != src.kind || m.target_kind != rec_.kind) {
    r.Fail(Category::kMalformed, "migration receipt kinds do not match");
  }
  VerifyOptions o;
  o.at = m.migrated_at;
  o.head_verification = m.source_head_verification;
  o.record_integrity = opts_.record_integrity;
  Verifier inner(src, docs_, source_, inv_, o);
  if (!StateMatchesKind(src)) {
    r.Fail(Category::kMalformed, "migration source: state does not match kind");
    return;
  }
  if (o.record_integrity && src.kind == StructureKind::kSls) {
    Report ir;
    inner.Integrity(ir);
    for (const Diagnostic& d : ir.diagnostics) {
      r.Fail(d.category, "migration source: " + d.detail);
    }
  }
  DocumentVerdict sv = inner.Document(item.name);
  r.source_touched += sv.attestations_checked;
  for (const Diagnostic& d : sv.diagnostics) {
    r.Fail(d.category, "migration source: " + d.detail);
  }
  // The target must have taken over while the source head was still valid.
  std::optional<TimeInstant> end =
      Estimate(HeadAttestation(src).hash_fn, m.source_head_verification->leaf,
               r, "migration source head: ");
  if (covered_at < m.migrated_at ||
      (end.has_value() && !(covered_at < *end))) {
    r.Fail(Category::kRenewalGap,
           "migrated data attested outside the source proof's validity");
  }
}

DocumentVerdict Verifier::Document(const std::string& name) {
  DocumentVerdict verdict;
  verdict.name = name;
  Report r;
  std::optional<Location> loc;
  if (!StateMatchesKind(rec_)) {
    r.Fail(Category::kMalformed, "record state does not match its structure");
  } else if (!(loc = Find(name)).has_value()) {
    r.Fail(Category::kMissingData, "document not protected by this record");
  } else if (chain_ != nullptr && chain_->empty()) {
    r.Fail(Category::kMalformed, "empty attestation chain");
  } else {
    const Item& item = *loc->item;
    if (item.kind != ItemKind::kMigratedHead) {
      auto doc = docs_.find(name);
      if (doc != docs_.end() &&
          !VerifyDocumentSignature(doc->second.document, doc->second.signature)) {
        r.Fail(Category::kSignatureInvalid, "document signature does not verify");
      }
    }
    if (item.kind != ItemKind::kDocument) {
      TimeInstant covered_at =
          chain_ != nullptr ? At(loc->element).attestation.stated_time
                            : std::get<NawState>(rec_.state).original_time;
      VerifySource(item, covered_at, r);
    }
    if (std::optional<Bytes> content = Content(item, r)) {
      try {
        if (const auto* as = std::get_if<AsState>(&rec_.state)) {
          VerifyAs(*as, loc->index, *content, r);
        } else if (const auto* mts = std::get_if<MtsState>(&rec_.state)) {
          VerifyMts(*mts, loc->index, *content, r);
        } else if (std::holds_alternative<SequenceState>(rec_.state)) {
          VerifySequence(loc->element, loc->index, *content, r);
        } else {
          VerifyNaw(std::get<NawState>(rec_.state), item, loc->index, *content, r);
        }
      } catch (const Error& e) {
        r.Fail(e.code() == Errc::kUsage ? Category::kMissingData
                                        : Category::kMalformed,
               e.what());
      }
    }
  }
  verdict.valid = r.valid;
  verdict.diagnostics = std::move(r.diagnostics);
  verdict.attestations_checked = r.touched.size() + r.source_touched;
  return verdict;
}

// ---- AS / MTS ----------------------------------------------------------------

void Verifier::VerifyAs(const AsState& s, std::size_t q, const Bytes& content,
                        Report& r) {
  const std::vector<Element>& chain = *chain_;
  Bytes d = BatchDatum(s.payload, q, chain[0].attestation.hash_fn, content, r, "");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    CheckElement(i, {}, &d, r);
    if (i + 1 < chain.size()) CheckSuccession(i, i + 1, r);
  }
  CheckHead(r);
}

void Verifier::VerifyMts(const MtsState& s, std::size_t q, const Bytes& content,
                         Report& r) {
  if (s.paths.size() != s.items.size() || s.paths[q].size() != trees_.size() ||
      trees_.empty() || trees_[0] != 0) {
    r.Fail(Category::kMalformed, "tree paths do not match the chain");
    return;
  }
  std::map<std::size_t, Bytes> roots;
  for (std::size_t k = 0; k < trees_.size(); ++k) {
    const std::size_t i = trees_[k];
    const AuthPath& path = s.paths[q][k];
    if (path.hash_fn != At(i).attestation.hash_fn || path.leaf_index != q ||
        !PathShapeValid(path, s.items.size())) {
      r.Fail(Category::kMalformed, El(i) + "tree path malformed");
    }
    Bytes leaf = k == 0 ? content
                        : attested::MtsLeaf(content, std::span<const AuthPath>(
                                                         s.paths[q].data(), k));
    roots[i] = RecomputeRoot(leaf, path);
  }
  for (std::size_t i = 0; i < chain_->size(); ++i) {
    CheckElement(i, roots, nullptr, r);
    if (i + 1 < chain_->size()) CheckSuccession(i, i + 1, r);
  }
  CheckHead(r);
}

// ---- element bytes -------------------------------------------------------------

Bytes Verifier::Datum(std::size_t j) const {
  const Element& e = At(j);
  if (!e.payload.has_value()) return {};
  return PayloadData(*e.payload, resolver_);
}

Bytes Verifier::ElementBytes(std::size_t i,
                             const std::map<std::size_t, Bytes>& roots,
                             const Bytes* as_datum) const {
  const Element& e = At(i);
  const HashFunctionId h = e.attestation.hash_fn;
  auto malformed = [&](const char* what) {
    return Error(Errc::kParse, El(i) + what);
  };
  if ((e.kind == ElementKind::kInitial) != (i == 0)) {
    throw malformed("only the first element is an initial one");
  }
  auto prev_renewal = [&]() {
    const Element& p = At(i - 1);
    if (!p.verification.has_value()) {
      throw Error(Errc::kParse, El(i - 1) + "verification data missing");
    }
    return attested::AttestationRenewal(h, p.attestation, *p.verification);
  };
  auto root = [&]() -> const Bytes& {
    auto it = roots.find(i);
    if (it == roots.end()) throw malformed("tree root unavailable");
    return it->second;
  };
  const bool sequence =
      rec_.kind == StructureKind::kMds || rec_.kind == StructureKind::kSls;
  if (sequence) {
    const bool wants_payload = e.kind == ElementKind::kInitial ||
                               e.kind == ElementKind::kAdd ||
                               e.kind == ElementKind::kHashAdd;
    if (wants_payload != e.payload.has_value()) {
      throw malformed("payload presence does not match the element kind");
    }
  } else if (e.payload.has_value() || !e.slots.empty() || !e.links.empty() ||
             !e.payload_digest.empty()) {
    throw malformed("sequence fields on a non-sequence element");
  }

  switch (rec_.kind) {
    case StructureKind::kAs:
      switch (e.kind) {
        case ElementKind::kInitial:
          return attested::Initial(h, Hash(h, *as_datum));
        case ElementKind::kAttestationRenewal:
          return prev_renewal();
        case ElementKind::kHashRenewal:
          return attested::AsHashRenewal(h, *as_datum,
                                         attested::ChainPrefix(*chain_, i));
        default:
          break;
      }
      break;
    case StructureKind::kMts:
      switch (e.kind) {
        case ElementKind::kInitial:
          return attested::Initial(h, root());
        case ElementKind::kAttestationRenewal:
          return prev_renewal();
        case ElementKind::kHashRenewal:
          return attested::MtsHashRenewal(h, root(),
                                          attested::ChainPrefix(*chain_, i));
        default:
          break;
      }
      break;
    case StructureKind::kMds: {
      if (!e.payload_digest.empty() || !e.links.empty()) {
        throw malformed("SLS fields on an MDS element");
      }
      switch (e.kind) {
        case ElementKind::kInitial:
          return attested::Initial(h, Hash(h, Datum(i)));
        case ElementKind::kAdd: {
          const Element& p = At(i - 1);
          if (!p.verification.has_value()) {
            throw Error(Errc::kParse, El(i - 1) + "verification data missing");
          }
          return attested::MdsAdd(h, Datum(i), p.attestation, *p.verification);
        }
        case ElementKind::kAttestationRenewal:
          return prev_renewal();
        case ElementKind::kHashRenewal:
          return attested::MdsHashRenewal(h, root());
        case ElementKind::kHashAdd:
          return attested::MdsHashAdd(h, root(), Datum(i), e.payload->batch);
      }
      break;
    }
    case StructureKind::kSls: {
      if (e.links.size() != SlsLinkCount(i)) throw malformed("link count");
      if (e.payload.has_value() == e.payload_digest.empty()) {
        throw malformed("payload digest presence");
      }
      std::optional<Bytes> digest;
      if (e.payload.has_value()) digest = e.payload_digest;
      switch (e.kind) {
        case ElementKind::kInitial:
          return attested::Initial(h, e.payload_digest);
        case ElementKind::kAdd:
        case ElementKind::kAttestationRenewal:
          return attested::SlsElement(h, std::nullopt,
                                      attested::SlsBody(h, digest, e.links));
        case ElementKind::kHashAdd:
        case ElementKind::kHashRenewal:
          return attested::SlsElement(h, root(),
                                      attested::SlsBody(h, digest, e.links));
      }
      break;
    }
    case StructureKind::kNaw:
      break;
  }
  throw malformed("element kind not allowed in this structure");
}

void Verifier::CheckElement(std::size_t i,
                            const std::map<std::size_t, Bytes>& roots,
                            const Bytes* as_datum, Report& r) {
  Bytes bytes;
  try {
    bytes = ElementBytes(i, roots, as_datum);
  } catch (const Error& e) {
    r.touched.insert(i);
    r.Fail(e.code() == Errc::kUsage ? Category::kMissingData : Category::kMalformed,
           e.what());
    return;
  }
  const VerificationData* vd = VdFor(i, r);
  if (vd == nullptr) return;
  CheckAttestation(i, At(i).attestation, *vd, At(i).cumulation, bytes, r, El(i));
}

// ---- MDS / SLS -----------------------------------------------------------------

std::size_t Verifier::SlotIndex(std::size_t j, std::size_t l) const {
  auto lo = std::upper_bound(trees_.begin(), trees_.end(), j);
  auto hi = std::lower_bound(trees_.begin(), trees_.end(), l);
  return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

std::size_t Verifier::TreesAfter(std::size_t j) const {
  return static_cast<std::size_t>(
      trees_.end() - std::upper_bound(trees_.begin(), trees_.end(), j));
}

bool Verifier::TreeBetween(std::size_t j, std::size_t cur) const {
  auto lo = std::upper_bound(trees_.begin(), trees_.end(), j);
  return lo != trees_.end() && *lo < cur;
}

std::optional<Bytes> Verifier::SlotRoot(std::size_t j, std::size_t l, Report& r) {
  const Element& ej = At(j);
  const std::size_t s = SlotIndex(j, l);
  if (s >= ej.slots.size() || ej.slots.size() != TreesAfter(j)) {
    r.Fail(Category::kMalformed, El(j) + "slot proofs do not match the trees");
    return std::nullopt;
  }
  if (!ej.verification.has_value()) {
    r.Fail(Category::kMissingData, El(j) + "verification data missing");
    return std::nullopt;
  }
  const SlotProof& slot = ej.slots[s];
  if (slot.path.hash_fn != At(l).attestation.hash_fn ||
      slot.path.leaf_index != j || !PathShapeValid(slot.path, l)) {
    r.Fail(Category::kMalformed, El(j) + "slot path malformed");
  }
  Bytes d;
  if (sls_) {
    if (ej.payload.has_value() == slot.digest.empty()) {
      r.Fail(Category::kMalformed, El(j) + "slot digest presence");
    }
    d = slot.digest;
  } else {
    if (!slot.digest.empty()) {
      r.Fail(Category::kMalformed, El(j) + "unexpected slot digest");
    }
    d = Datum(j);
  }
  Bytes leaf = attested::SequenceLeaf(d, ej.attestation, *ej.verification,
                                      s > 0 ? &ej.slots[s - 1].path : nullptr);
  return RecomputeRoot(leaf, slot.path);
}

Bytes Verifier::TreeRoot(std::size_t l, const std::vector<std::size_t>& refs,
                         Report& r) {
  std::optional<Bytes> root;
  for (std::size_t j : refs) {
    std::optional<Bytes> rj = SlotRoot(j, l, r);
    if (!rj.has_value()) continue;
    if (!root.has_value()) {
      root = std::move(rj);
    } else if (*rj != *root) {
      r.Fail(Category::kDigestMismatch,
             El(j) + "slot path disagrees on the root of tree " + std::to_string(l));
    }
  }
  return root.value_or(Bytes());
}

std::vector<std::size_t> Verifier::SlsWalk(std::size_t e) {
  const std::size_t n = chain_->size();
  std::vector<std::size_t> visited = {n - 1};
  std::size_t cur = n - 1;
  Report scratch;
  while (cur > e) {
    std::size_t chosen = 0;
    for (std::size_t level = SlsLinkCount(cur); level-- > 1;) {
      const std::size_t step = std::size_t{1} << level;
      if (step > cur - e) continue;
      const std::size_t j = cur - step;
      if (TreeBetween(j, cur) || !At(j).verification.has_value()) continue;
      std::optional<TimeInstant> end = Estimate(
          At(j).attestation.hash_fn, At(j).verification->leaf, scratch, "");
      if (!end.has_value() || !(At(cur).attestation.stated_time < *end)) continue;
      chosen = level;
      break;
    }
    cur -= std::size_t{1} << chosen;
    visited.push_back(cur);
  }
  return visited;
}

void Verifier::CheckLink(std::size_t cur, std::size_t j, Report& r) {
  std::size_t level = 0;
  while ((std::size_t{1} << level) < cur - j) ++level;
  const Element& ec = At(cur);
  const Element& ej = At(j);
  if (level >= ec.links.size() || !ej.verification.has_value()) {
    r.Fail(Category::kMalformed, El(cur) + "link missing");
    return;
  }
  if (ec.links[level] !=
      attested::SlsLink(ec.attestation.hash_fn, ej.attestation, *ej.verification)) {
    r.Fail(Category::kDigestMismatch,
           El(cur) + "link " + std::to_string(level) + " does not match element " +
               std::to_string(j));
  }
}

void Verifier::VerifySequence(std::size_t e, std::size_t q, const Bytes& content,
                              Report& r) {
  const std::size_t n = chain_->size();
  const Element& target = At(e);
  const HashFunctionId he = target.attestation.hash_fn;
  Bytes d = BatchDatum(*target.payload, q, he, content, r, El(e));
  if (sls_ && target.payload_digest != Hash(he, d)) {
    r.Fail(Category::kDigestMismatch, El(e) + "document digest does not match");
  }

  std::vector<std::size_t> visited;
  if (sls_) {
    visited = SlsWalk(e);
  } else {
    for (std::size_t i = n; i-- > e;) visited.push_back(i);
  }

  std::map<std::size_t, Bytes> roots;
  for (std::size_t l : visited) {
    if (!IsTreeElement(rec_.kind, At(l))) continue;
    if (l == 0) continue;  // reported by ElementBytes
    std::vector<std::size_t> refs;
    for (std::size_t j : visited) {
      if (j < l) refs.push_back(j);
    }
    if (refs.empty()) refs.push_back(l - 1);
    roots[l] = TreeRoot(l, refs, r);
    if (sls_ && l > e) {
      const std::size_t s = SlotIndex(e, l);
      if (s < target.slots.size() &&
          target.slots[s].digest != Hash(At(l).attestation.hash_fn, d)) {
        r.Fail(Category::kDigestMismatch,
               El(e) + "document digest in tree " + std::to_string(l) +
                   " does not match");
      }
    }
  }

  for (std::size_t k = 0; k < visited.size(); ++k) {
    CheckElement(visited[k], roots, nullptr, r);
    if (k + 1 < visited.size()) {
      CheckSuccession(visited[k + 1], visited[k], r);
      if (sls_) CheckLink(visited[k], visited[k + 1], r);
    }
  }
  CheckHead(r);
}

void Verifier::Integrity(Report& r) {
  if (!StateMatchesKind(rec_) || chain_ == nullptr) return;
  if (chain_->empty()) {
    r.Fail(Category::kMalformed, "empty attestation chain");
    return;
  }
  if (!sls_) return;  // other structures are covered by the document walks
  const std::size_t n = chain_->size();
  try {
    std::map<std::size_t, Bytes> roots;
    for (std::size_t l : trees_) {
      if (l == 0) continue;
      std::vector<std::size_t> refs;
      for (std::size_t j = 0; j < l; ++j) refs.push_back(j);
      roots[l] = TreeRoot(l, refs, r);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (At(j).slots.size() != TreesAfter(j)) {
        r.Fail(Category::kMalformed, El(j) + "slot proofs do not match the trees");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      CheckElement(i, roots, nullptr, r);
      if (i + 1 < n) CheckSuccession(i, i + 1, r);
      for (std::size_t level = 0; level < SlsLinkCount(i); ++level) {
        CheckLink(i, i - (std::size_t{1} << level), r);
      }
    }
    CheckHead(r);
  } catch (const Error& e) {
    r.Fail(Category::kMalformed, e.what());
  }
}

// ---- NAW -----------------------------------------------------------------------

void Verifier::VerifyNaw(const NawState& s, const Item& item, std::size_t q,
                         const Bytes& content, Report& r) {
  const Attestation& a = s.attestation;
  if (a.issuer_kind != IssuerKind::kNa) {
    r.Fail(Category::kChainInvalid, "NAW attestation not issued by a notary");
  }
  if (s.history.empty() || s.history.back().hash_fn != a.hash_fn) {
    r.Fail(Category::kMalformed, "hash history does not end with the head hash");
  }
  if (a.stated_time != s.original_time) {
    r.Fail(Category::kMalformed, "original time differs from the attested time");
  }
  const bool batch = s.subject.batch;
  if (batch && s.item_paths.size() != s.history.size()) {
    r.Fail(Category::kMalformed, "batch paths do not match the hash history");
  }
  for (std::size_t k = 0; k < s.history.size(); ++k) {
    const HashValue& hv = s.history[k];
    Bytes value;
    if (batch) {
      if (k >= s.item_paths.size() || q >= s.item_paths[k].size()) continue;
      const AuthPath& path = s.item_paths[k][q];
      if (path.hash_fn != hv.hash_fn || path.leaf_index != q ||
          !PathShapeValid(path, s.subject.items.size())) {
        r.Fail(Category::kMalformed, "batch path malformed");
      }
      value = RecomputeRoot(content, path);
    } else {
      value = Hash(hv.hash_fn, content);
    }
    if (value != hv.value) {
      r.Fail(Category::kDigestMismatch,
             std::string(HashName(hv.hash_fn)) +
                 " value in the hash history does not match the document");
    }
  }
  if (item.kind != ItemKind::kMigratedHead) {
    auto doc = docs_.find(item.name);
    if (doc != docs_.end() &&
        std::find(s.certificates.begin(), s.certificates.end(),
                  doc->second.signature.signer_cert) == s.certificates.end()) {
      r.Fail(Category::kSignatureInvalid,
             "signer certificate not among those checked by the notary");
    }
  }
  const VerificationData* vd = HeadVd(r);
  if (vd != nullptr) {
    CheckAttestation(0, a, *vd, s.cumulation,
                     NawAttestedBytes(s.history, s.certificates), r, "");
  }
  CheckHead(r);
}

}  // namespace

std::vector<Category> Verdict::Categories() const {
  std::set<Category> all;
  for (const Diagnostic& d : record_diagnostics) all.insert(d.category);
  for (const DocumentVerdict& v : documents) {
    for (const Diagnostic& d : v.diagnostics) all.insert(d.category);
  }
  return {all.begin(), all.end()};
}

Verdict VerifyProof(const EvidenceRecord& record, const DocumentSet& docs,
                    VerificationSource& source, const SecurityInventory& inv,
                    const VerifyOptions& options) {
  Verdict out;
  if (record.format_version != kFormatVersion) {
    out.record_diagnostics.push_back(
        {Category::kMalformed, "unsupported format version"});
  }
  Verifier v(record, docs, source, inv, options);
  if (options.record_integrity) {
    Report r;
    v.Integrity(r);
    out.record_diagnostics.insert(out.record_diagnostics.end(),
                                  r.diagnostics.begin(), r.diagnostics.end());
  }
  if (StateMatchesKind(record)) {
    for (const std::string& name : DocumentNames(record)) {
      out.documents.push_back(v.Document(name));
    }
  } else {
    out.record_diagnostics.push_back(
        {Category::kMalformed, "record state does not match its structure"});
  }
  out.valid = out.record_diagnostics.empty() && !out.documents.empty();
  for (const DocumentVerdict& d : out.documents) out.valid = out.valid && d.valid;
  return out;
}

DocumentVerdict VerifyDocument(const EvidenceRecord& record,
                               const std::string& name, const DocumentSet& docs,
                               VerificationSource& source,
                               const SecurityInventory& inv,
                               const VerifyOptions& options) {
  Verifier v(record, docs, source, inv, options);
  DocumentVerdict out = v.Document(name);
  if (options.record_integrity) {
    Report r;
    v.Integrity(r);
    for (Diagnostic& d : r.diagnostics) out.diagnostics.push_back(std::move(d));
    out.valid = out.valid && r.valid;
  }
  return out;
}

}  // namespace mops
