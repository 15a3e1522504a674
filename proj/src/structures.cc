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
#include "mops/structures.h"

#include <algorithm>
#include <set>

#include "mops/attested_bytes.h"
#include "mops/error.h"

namespace mops {

namespace {

void RequireUniqueNames(const std::vector<Item>& items,
                        const EvidenceRecord* existing) {
  std::set<std::string> seen;
  if (existing != nullptr) {
    for (const std::string& n : DocumentNames(*existing)) seen.insert(n);
  }
  for (const Item& item : items) {
    if (!seen.insert(item.name).second) {
      throw Error(Errc::kUsage, "document '" + item.name + "' already protected");
    }
  }
}

void RequireSecure(const ProtectContext& ctx, HashFunctionId h, TimeInstant t) {
  if (!ctx.inventory.SecureAt(h, t) || !ctx.inventory.SecureAt(PairedParams(h), t)) {
    throw Error(Errc::kInsecurePrimitive,
                std::string(HashName(h)) + " not secure at " + FormatTime(t));
  }
}

bool IsSequence(StructureKind kind) {
  return kind == StructureKind::kMds || kind == StructureKind::kSls;
}

Payload MakePayload(std::vector<Item> items, bool batch, HashFunctionId h,
                    const ContentResolver& resolver) {
  if (items.empty()) throw Error(Errc::kEmptyInput, "no documents");
  if (batch) return MakeBatch(std::move(items), h, resolver);
  if (items.size() != 1) {
    throw Error(Errc::kUsage, "several documents need a batch");
  }
  Payload p;
  p.items = std::move(items);
  resolver.Content(p.items[0]);  // fail early on a missing document
  return p;
}

std::vector<Certificate> SignerCertificates(const Payload& payload,
                                            const DocumentSet& docs) {
  std::vector<Certificate> certs;
  for (const Item& item : payload.items) {
    if (item.kind == ItemKind::kMigratedHead) continue;
    auto it = docs.find(item.name);
    if (it == docs.end()) {
      throw Error(Errc::kUsage, "document '" + item.name + "' not supplied");
    }
    const Certificate& c = it->second.signature.signer_cert;
    if (std::find(certs.begin(), certs.end(), c) == certs.end()) {
      certs.push_back(c);
    }
  }
  return certs;
}

// NAW claimed value under h: H(d) for one item, batch root otherwise.
HashValue NawValue(const Payload& subject, HashFunctionId h,
                   const ContentResolver& resolver,
                   std::vector<AuthPath>* paths) {
  if (!subject.batch) return {h, Hash(h, resolver.Content(subject.items[0]))};
  Payload rebuilt = MakeBatch(subject.items, h, resolver);
  *paths = rebuilt.paths;
  return {h, rebuilt.batch_root};
}

// Builds the hash-renewal tree over every element of a sequence (their
// verification data must be in place) and records each slot's path.
Bytes BuildSequenceTree(StructureKind kind, std::vector<Element>& chain,
                        HashFunctionId h, const ContentResolver& resolver) {
  std::vector<Bytes> leaves;
  std::vector<Bytes> digests;
  leaves.reserve(chain.size());
  for (const Element& e : chain) {
    Bytes d;
    if (e.payload.has_value()) {
      d = PayloadData(*e.payload, resolver);
      if (kind == StructureKind::kSls) d = Hash(h, d);
    }
    const AuthPath* previous = e.slots.empty() ? nullptr : &e.slots.back().path;
    leaves.push_back(
        attested::SequenceLeaf(d, e.attestation, *e.verification, previous));
    digests.push_back(kind == StructureKind::kSls ? d : Bytes());
  }
  MerkleTree tree(h, leaves);
  for (std::size_t j = 0; j < chain.size(); ++j) {
    chain[j].slots.push_back({digests[j], tree.PathFor(j)});
  }
  return tree.root();
}

std::vector<Bytes> SlsLinks(const std::vector<Element>& chain, std::size_t index,
                            HashFunctionId h) {
  std::vector<Bytes> links;
  for (std::size_t level = 0; level < SlsLinkCount(index); ++level) {
    const Element& target = chain[index - (std::size_t{1} << level)];
    links.push_back(
        attested::SlsLink(h, target.attestation, *target.verification));
  }
  return links;
}

// Shared prologue of renewals and additions: checks the head is still valid,
// captures its verification data and stores it on the head element.
VerificationData CaptureHead(EvidenceRecord& next, TimeInstant t,
                             const ProtectContext& ctx) {
  const Attestation& head = HeadAttestation(next);
  if (t < head.stated_time) {
    throw Error(Errc::kUsage, "renewal time precedes the head attestation");
  }
  VerificationData v = ctx.source.Collect(head.issuer_cert, t);
  TimeInstant end = ValidityEstimate(ctx.inventory, head.hash_fn, v.leaf);
  if (!(t < end)) {
    throw Error(Errc::kRenewalWindowMissed,
                "head attestation expired at " + FormatTime(end));
  }
  if (!std::holds_alternative<NawState>(next.state)) {
    MutableChain(next).back().verification = v;
  }
  return v;
}

}  // namespace

std::vector<Item> DocumentItems(const std::vector<std::string>& names) {
  std::vector<Item> items;
  for (const std::string& n : names) items.push_back({ItemKind::kDocument, n, 0});
  return items;
}

Proposal ProposeInit(StructureKind kind, IssuerKind attester,
                     std::vector<Item> items, bool batch, HashFunctionId h,
                     TimeInstant t, const DocumentSet& docs,
                     const ProtectContext& ctx,
                     std::vector<MigrationReceipt> receipts) {
  if (items.empty()) throw Error(Errc::kEmptyInput, "no documents");
  if (kind == StructureKind::kNaw && attester != IssuerKind::kNa) {
    throw Error(Errc::kIncompatible, "NAW requires a notarial authority");
  }
  if (kind != StructureKind::kNaw) RequireSecure(ctx, h, t);
  RequireUniqueNames(items, nullptr);

  Proposal p;
  p.hash_fn = h;
  p.time = t;
  EvidenceRecord& rec = p.next;
  rec.kind = kind;
  rec.attester = attester;
  rec.created_at = t;
  rec.receipts = std::move(receipts);
  ContentResolver resolver(rec, docs);

  switch (kind) {
    case StructureKind::kAs: {
      AsState s;
      s.payload = MakePayload(std::move(items), batch, h, resolver);
      p.attested_bytes =
          attested::Initial(h, Hash(h, PayloadData(s.payload, resolver)));
      s.chain.push_back({});
      rec.state = std::move(s);
      break;
    }
    case StructureKind::kMts: {
      MtsState s;
      std::vector<Bytes> leaves;
      for (const Item& item : items) leaves.push_back(resolver.Content(item));
      MerkleTree tree(h, leaves);
      for (std::size_t i = 0; i < items.size(); ++i) {
        s.paths.push_back({tree.PathFor(i)});
      }
      s.items = std::move(items);
      p.attested_bytes = attested::Initial(h, tree.root());
      s.chain.push_back({});
      rec.state = std::move(s);
      break;
    }
    case StructureKind::kMds:
    case StructureKind::kSls: {
      SequenceState s;
      Element e;
      e.payload = MakePayload(std::move(items), batch, h, resolver);
      Bytes digest = Hash(h, PayloadData(*e.payload, resolver));
      if (kind == StructureKind::kSls) e.payload_digest = digest;
      p.attested_bytes = attested::Initial(h, digest);
      s.chain.push_back(std::move(e));
      rec.state = std::move(s);
      break;
    }
    case StructureKind::kNaw: {
      NawState s;
      s.subject = MakePayload(std::move(items), batch, h, resolver);
      std::vector<AuthPath> paths;
      s.history.push_back(NawValue(s.subject, h, resolver, &paths));
      if (s.subject.batch) {
        s.item_paths.push_back(paths);
        s.subject.batch_root.clear();
        s.subject.paths.clear();
      }
      s.certificates = SignerCertificates(s.subject, docs);
      s.original_time = t;
      p.attested_bytes = NawAttestedBytes(s.history, s.certificates);
      NaExtras x;
      x.operation = NaOperation::kInit;
      x.certificates = s.certificates;
      x.claimed_history = s.history;
      x.original_time = t;
      p.na_extras = std::move(x);
      rec.state = std::move(s);
      break;
    }
  }
  return p;
}

Proposal ProposeRenewal(const EvidenceRecord& record, HashFunctionId h,
                        TimeInstant t, const DocumentSet& docs,
                        const ProtectContext& ctx) {
  if (record.kind != StructureKind::kNaw) RequireSecure(ctx, h, t);
  Proposal p;
  p.hash_fn = h;
  p.time = t;
  p.next = record;
  EvidenceRecord& rec = p.next;
  const HashFunctionId previous_hash = HeadHash(rec);
  const bool hash_change = previous_hash != h;
  VerificationData v = CaptureHead(rec, t, ctx);
  ContentResolver resolver(rec, docs);

  if (auto* naw = std::get_if<NawState>(&rec.state)) {
    NaExtras x;
    x.operation = NaOperation::kRenew;
    x.certificates = naw->certificates;
    x.prior = naw->attestation;
    x.prior_verification = v;
    x.prior_cumulation = naw->cumulation;
    x.original_time = naw->original_time;
    if (hash_change) {
      std::vector<AuthPath> paths;
      naw->history.push_back(NawValue(naw->subject, h, resolver, &paths));
      if (naw->subject.batch) naw->item_paths.push_back(paths);
    }
    x.claimed_history = naw->history;
    p.attested_bytes = NawAttestedBytes(naw->history, naw->certificates);
    p.na_extras = std::move(x);
    return p;
  }

  std::vector<Element>& chain = MutableChain(rec);
  const std::size_t n = chain.size();
  Element e;
  e.kind = hash_change ? ElementKind::kHashRenewal
                       : ElementKind::kAttestationRenewal;

  switch (rec.kind) {
    case StructureKind::kAs: {
      const auto& s = std::get<AsState>(rec.state);
      p.attested_bytes =
          hash_change
              ? attested::AsHashRenewal(h, PayloadData(s.payload, resolver),
                                        attested::ChainPrefix(chain, n))
              : attested::AttestationRenewal(h, chain[n - 1].attestation, v);
      break;
    }
    case StructureKind::kMts: {
      auto& s = std::get<MtsState>(rec.state);
      if (!hash_change) {
        p.attested_bytes =
            attested::AttestationRenewal(h, chain[n - 1].attestation, v);
        break;
      }
      std::vector<Bytes> leaves;
      for (std::size_t q = 0; q < s.items.size(); ++q) {
        leaves.push_back(
            attested::MtsLeaf(resolver.Content(s.items[q]), s.paths[q]));
      }
      MerkleTree tree(h, leaves);
      for (std::size_t q = 0; q < s.items.size(); ++q) {
        s.paths[q].push_back(tree.PathFor(q));
      }
      p.attested_bytes = attested::MtsHashRenewal(
          h, tree.root(), attested::ChainPrefix(chain, n));
      break;
    }
    case StructureKind::kMds: {
      p.attested_bytes =
          hash_change
              ? attested::MdsHashRenewal(
                    h, BuildSequenceTree(rec.kind, chain, h, resolver))
              : attested::AttestationRenewal(h, chain[n - 1].attestation, v);
      break;
    }
    case StructureKind::kSls: {
      std::optional<Bytes> root;
      if (hash_change) root = BuildSequenceTree(rec.kind, chain, h, resolver);
      e.links = SlsLinks(chain, n, h);
      p.attested_bytes = attested::SlsElement(
          h, root, attested::SlsBody(h, std::nullopt, e.links));
      break;
    }
    case StructureKind::kNaw:
      break;
  }
  chain.push_back(std::move(e));
  return p;
}

Proposal ProposeAdd(const EvidenceRecord& record, std::vector<Item> items,
                    bool batch, HashFunctionId h, TimeInstant t,
                    const DocumentSet& docs, const ProtectContext& ctx,
                    std::vector<MigrationReceipt> new_receipts) {
  if (!IsSequence(record.kind)) {
    throw Error(Errc::kUsage, std::string(StructureName(record.kind)) +
                                  " does not support adding documents");
  }
  RequireSecure(ctx, h, t);
  RequireUniqueNames(items, &record);
  Proposal p;
  p.hash_fn = h;
  p.time = t;
  p.next = record;
  EvidenceRecord& rec = p.next;
  for (MigrationReceipt& r : new_receipts) rec.receipts.push_back(std::move(r));
  const bool hash_change = HeadHash(rec) != h;
  VerificationData v = CaptureHead(rec, t, ctx);
  ContentResolver resolver(rec, docs);

  std::vector<Element>& chain = MutableChain(rec);
  const std::size_t n = chain.size();
  Element e;
  e.kind = hash_change ? ElementKind::kHashAdd : ElementKind::kAdd;
  e.payload = MakePayload(std::move(items), batch, h, resolver);
  const Bytes d = PayloadData(*e.payload, resolver);

  if (rec.kind == StructureKind::kMds) {
    p.attested_bytes =
        hash_change
            ? attested::MdsHashAdd(h, BuildSequenceTree(rec.kind, chain, h, resolver),
                                   d, e.payload->batch)
            : attested::MdsAdd(h, d, chain[n - 1].attestation, v);
  } else {
    std::optional<Bytes> root;
    if (hash_change) root = BuildSequenceTree(rec.kind, chain, h, resolver);
    e.payload_digest = Hash(h, d);
    e.links = SlsLinks(chain, n, h);
    p.attested_bytes = attested::SlsElement(
        h, root, attested::SlsBody(h, e.payload_digest, e.links));
  }
  chain.push_back(std::move(e));
  return p;
}

AttestRequest MakeRequest(const Proposal& proposal, IssuerKind attester) {
  AttestRequest r;
  r.payload_digest = Hash(proposal.hash_fn, proposal.attested_bytes);
  r.hash_fn = proposal.hash_fn;
  r.requested_time = proposal.time;
  if (proposal.na_extras.has_value()) {
    if (attester != IssuerKind::kNa) {
      throw Error(Errc::kIncompatible, "NAW requires a notarial authority");
    }
    r.na_extras = proposal.na_extras;
  } else if (attester == IssuerKind::kNa) {
    r.na_extras = NaExtras{};
  }
  return r;
}

EvidenceRecord Commit(Proposal proposal, const Attestation& attestation,
                      std::optional<AuthPath> cumulation) {
  EvidenceRecord rec = std::move(proposal.next);
  if (auto* naw = std::get_if<NawState>(&rec.state)) {
    naw->attestation = attestation;
    naw->cumulation = std::move(cumulation);
  } else {
    Element& head = MutableChain(rec).back();
    head.attestation = attestation;
    head.cumulation = std::move(cumulation);
  }
  return rec;
}

EvidenceRecord Execute(Proposal proposal, Attester& attester) {
  AttestRequest request = MakeRequest(proposal, attester.kind());
  Attestation a = attester.Attest(request, proposal.time);
  return Commit(std::move(proposal), a);
}

EvidenceRecord AsInit(const std::string& name, const DocumentSet& docs,
                      TimeInstant t0, HashFunctionId h0, Attester& attester,
                      const ProtectContext& ctx) {
  return Execute(ProposeInit(StructureKind::kAs, attester.kind(),
                             DocumentItems({name}), false, h0, t0, docs, ctx),
                 attester);
}

EvidenceRecord MtsInit(const std::vector<std::string>& names,
                       const DocumentSet& docs, TimeInstant t0,
                       HashFunctionId h0, Attester& attester,
                       const ProtectContext& ctx) {
  return Execute(ProposeInit(StructureKind::kMts, attester.kind(),
                             DocumentItems(names), true, h0, t0, docs, ctx),
                 attester);
}

EvidenceRecord MdsInit(const std::string& name, const DocumentSet& docs,
                       TimeInstant t0, HashFunctionId h0, Attester& attester,
                       const ProtectContext& ctx) {
  return Execute(ProposeInit(StructureKind::kMds, attester.kind(),
                             DocumentItems({name}), false, h0, t0, docs, ctx),
                 attester);
}

EvidenceRecord SlsInit(const std::string& name, const DocumentSet& docs,
                       TimeInstant t0, HashFunctionId h0, Attester& attester,
                       const ProtectContext& ctx) {
  return Execute(ProposeInit(StructureKind::kSls, attester.kind(),
                             DocumentItems({name}), false, h0, t0, docs, ctx),
                 attester);
}

EvidenceRecord NawInit(const std::string& name, const DocumentSet& docs,
                       TimeInstant t0, HashFunctionId h0, Attester& attester,
                       const ProtectContext& ctx) {
  return Execute(ProposeInit(StructureKind::kNaw, attester.kind(),
                             DocumentItems({name}), false, h0, t0, docs, ctx),
                 attester);
}

EvidenceRecord Renew(const EvidenceRecord& record, TimeInstant t,
                     HashFunctionId h, const DocumentSet& docs,
                     Attester& attester, const ProtectContext& ctx) {
  return Execute(ProposeRenewal(record, h, t, docs, ctx), attester);
}

EvidenceRecord AddDocument(const EvidenceRecord& record, const std::string& name,
                           TimeInstant t, HashFunctionId h,
                           const DocumentSet& docs, Attester& attester,
                           const ProtectContext& ctx) {
  return Execute(
      ProposeAdd(record, DocumentItems({name}), false, h, t, docs, ctx),
      attester);
}

EvidenceRecord Protect(StructureKind kind, const std::vector<std::string>& names,
                       bool batch, const DocumentSet& docs, TimeInstant t,
                       HashFunctionId h, Attester& attester,
                       const ProtectContext& ctx) {
  if (names.empty()) throw Error(Errc::kEmptyInput, "no documents");
  if (IsSequence(kind) && !batch && names.size() > 1) {
    EvidenceRecord rec = Execute(ProposeInit(kind, attester.kind(),
                                             DocumentItems({names[0]}), false,
                                             h, t, docs, ctx),
                                 attester);
    for (std::size_t i = 1; i < names.size(); ++i) {
      rec = AddDocument(rec, names[i], t, h, docs, attester, ctx);
    }
    return rec;
  }
  return Execute(ProposeInit(kind, attester.kind(), DocumentItems(names), batch,
                             h, t, docs, ctx),
                 attester);
}

TimeInstant HeadValidityEnd(const EvidenceRecord& record,
                            const ProtectContext& ctx, TimeInstant at) {
  const Attestation& head = HeadAttestation(record);
  VerificationData v = ctx.source.Collect(head.issuer_cert, at);
  return ValidityEstimate(ctx.inventory, head.hash_fn, v.leaf);
}

}  // namespace mops
