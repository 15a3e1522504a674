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
#include "mops/attestation.h"

#include <algorithm>

#include "mops/error.h"
#include "mops/evidence_format.h"
#include "mops/migrate.h"
#include "mops/verify.h"

namespace mops {

namespace {

void EncodeOptional(Encoder& e, const std::optional<Bytes>& value) {
  e.U8(value.has_value() ? 1 : 0);
  if (value.has_value()) e.Field(*value);
}

std::optional<Bytes> DecodeOptional(Decoder& d) {
  std::uint8_t flag = d.U8();
  if (flag > 1) throw Error(Errc::kParse, "bad presence flag");
  if (flag == 0) return std::nullopt;
  return d.Field();
}

Bytes EncodeExtras(const NaExtras& x) {
  Encoder e;
  e.U8(static_cast<std::uint8_t>(x.operation));
  e.U64(x.certificates.size());
  for (const Certificate& c : x.certificates) c.EncodeTo(e);
  e.U64(x.claimed_history.size());
  for (const HashValue& h : x.claimed_history) {
    e.Field(HashName(h.hash_fn)).Field(h.value);
  }
  EncodeOptional(e, x.prior ? std::optional<Bytes>(x.prior->Encode())
                            : std::nullopt);
  EncodeOptional(e, x.prior_verification
                        ? std::optional<Bytes>(x.prior_verification->Encode())
                        : std::nullopt);
  e.IntField(x.original_time.seconds);
  if (x.prior_cumulation.has_value()) {
    e.U8(1).Field(HashName(x.prior_cumulation->hash_fn))
        .Field(x.prior_cumulation->Encode());
  } else {
    e.U8(0);
  }
  e.U64(x.members.size());
  for (const NaMember& m : x.members) {
    e.Field(m.leaf_hash);
    EncodeOptional(e, m.extras ? std::optional<Bytes>(EncodeExtras(*m.extras))
                               : std::nullopt);
  }
  e.Field(x.source_record);
  e.U64(x.subject_names.size());
  for (const std::string& n : x.subject_names) e.Field(n);
  e.U64(x.source_documents.size());
  for (const auto& [name, doc] : x.source_documents) e.Field(name).Field(doc);
  return e.Take();
}

constexpr std::uint64_t kMaxListLength = 1 << 16;

std::uint64_t ReadCount(Decoder& d) {
  std::uint64_t n = d.U64();
  if (n > kMaxListLength) throw Error(Errc::kParse, "list too long");
  return n;
}

NaExtras DecodeExtras(ByteView bytes);

NaExtras DecodeExtras(ByteView bytes) {
  Decoder d(bytes);
  NaExtras x;
  std::uint8_t op = d.U8();
  if (op > static_cast<std::uint8_t>(NaOperation::kCumulate)) {
    throw Error(Errc::kParse, "unknown NA operation");
  }
  x.operation = static_cast<NaOperation>(op);
  for (std::uint64_t i = 0, n = ReadCount(d); i < n; ++i) {
    x.certificates.push_back(Certificate::DecodeFrom(d));
  }
  for (std::uint64_t i = 0, n = ReadCount(d); i < n; ++i) {
    HashValue h;
    h.hash_fn = ParseHashName(d.Text());
    h.value = d.Field();
    x.claimed_history.push_back(std::move(h));
  }
  if (auto prior = DecodeOptional(d)) x.prior = Attestation::Decode(*prior);
  if (auto vd = DecodeOptional(d)) {
    x.prior_verification = VerificationData::Decode(*vd);
  }
  x.original_time.seconds = d.IntField();
  std::uint8_t has_path = d.U8();
  if (has_path > 1) throw Error(Errc::kParse, "bad presence flag");
  if (has_path == 1) {
    HashFunctionId h = ParseHashName(d.Text());
    x.prior_cumulation = AuthPath::Decode(d.Field(), h);
  }
  for (std::uint64_t i = 0, n = ReadCount(d); i < n; ++i) {
    NaMember m;
    m.leaf_hash = d.Field();
    if (auto extras = DecodeOptional(d)) {
      m.extras = DecodeExtras(*extras);
      if (m.extras->operation == NaOperation::kCumulate) {
        throw Error(Errc::kParse, "nested cumulation");
      }
    }
    x.members.push_back(std::move(m));
  }
  x.source_record = d.Text();
  for (std::uint64_t i = 0, n = ReadCount(d); i < n; ++i) {
    x.subject_names.push_back(d.Text());
  }
  for (std::uint64_t i = 0, n = ReadCount(d); i < n; ++i) {
    std::string name = d.Text();
    x.source_documents.emplace_back(std::move(name), d.Field());
  }
  d.Finish();
  return x;
}

}  // namespace

std::string_view IssuerKindName(IssuerKind kind) {
  return kind == IssuerKind::kTsa ? "TSA" : "NA";
}

IssuerKind ParseIssuerKind(std::string_view name) {
  if (name == "TSA") return IssuerKind::kTsa;
  if (name == "NA") return IssuerKind::kNa;
  throw Error(Errc::kParse, "unknown attester kind '" + std::string(name) + "'");
}

Bytes Attestation::SignedBytes() const {
  Encoder e;
  e.U8(static_cast<std::uint8_t>(issuer_kind))
      .Field(HashName(hash_fn))
      .Field(attested_digest)
      .IntField(stated_time.seconds)
      .IntField(static_cast<std::int64_t>(issuer_cert.serial))
      .Field(issuer_cert.subject);
  return e.Take();
}

Bytes Attestation::Encode() const {
  Encoder e;
  e.Raw(SignedBytes()).Field(signature);
  return e.Take();
}

Attestation Attestation::Decode(ByteView bytes) {
  Decoder d(bytes);
  Attestation a;
  std::uint8_t kind = d.U8();
  if (kind > 1) throw Error(Errc::kParse, "bad issuer kind");
  a.issuer_kind = static_cast<IssuerKind>(kind);
  a.hash_fn = ParseHashName(d.Text());
  a.attested_digest = d.Field();
  if (a.attested_digest.size() != DigestSize(a.hash_fn)) {
    throw Error(Errc::kParse, "attested digest size");
  }
  a.stated_time.seconds = d.IntField();
  a.issuer_cert.serial = static_cast<std::uint64_t>(d.IntField());
  a.issuer_cert.subject = d.Text();
  a.signature = d.Field();
  d.Finish();
  return a;
}

Bytes AttestRequest::Encode() const {
  Encoder e;
  e.Field(payload_digest).Field(HashName(hash_fn)).IntField(requested_time.seconds);
  EncodeOptional(e, na_extras ? std::optional<Bytes>(EncodeExtras(*na_extras))
                              : std::nullopt);
  return e.Take();
}

AttestRequest AttestRequest::Decode(ByteView bytes) {
  Decoder d(bytes);
  AttestRequest r;
  r.payload_digest = d.Field();
  r.hash_fn = ParseHashName(d.Text());
  r.requested_time.seconds = d.IntField();
  if (auto extras = DecodeOptional(d)) r.na_extras = DecodeExtras(*extras);
  d.Finish();
  return r;
}

Bytes NawAttestedBytes(const std::vector<HashValue>& history,
                       const std::vector<Certificate>& certificates) {
  Encoder e;
  for (const HashValue& h : history) e.Field(HashName(h.hash_fn)).Field(h.value);
  for (const Certificate& c : certificates) e.Field(c.Encode());
  return e.Take();
}

Attestation TimestampAuthority::Attest(const AttestRequest& request,
                                       TimeInstant clock) {
  if (request.na_extras.has_value()) {
    throw Error(Errc::kNaBadRequest, "a TSA does not accept notarial extras");
  }
  if (request.payload_digest.size() != DigestSize(request.hash_fn)) {
    throw Error(Errc::kNaBadRequest, "payload digest size");
  }
  std::lock_guard<std::mutex> lock(mu_);
  PkiWorld::Credential cred =
      world_.LeafCredential(kTsaEntity, request.hash_fn, clock);
  if (!cred.certificate.ValidAt(clock)) {
    throw Error(Errc::kCertificateExpired, "TSA certificate not valid");
  }
  Attestation a;
  a.issuer_kind = IssuerKind::kTsa;
  a.hash_fn = request.hash_fn;
  a.attested_digest = request.payload_digest;
  a.stated_time = clock;
  a.issuer_cert = cred.certificate.Ref();
  a.signature = Sign(cred.key, a.hash_fn, a.SignedBytes());
  return a;
}

Attestation NotarialAuthority::Issue(HashFunctionId hash_fn, const Bytes& digest,
                                     TimeInstant stated_time,
                                     TimeInstant clock) {
  PkiWorld::Credential cred = world_.LeafCredential(kNaEntity, hash_fn, clock);
  if (!cred.certificate.ValidAt(clock)) {
    throw Error(Errc::kCertificateExpired, "NA certificate not valid");
  }
  Attestation a;
  a.issuer_kind = IssuerKind::kNa;
  a.hash_fn = hash_fn;
  a.attested_digest = digest;
  a.stated_time = stated_time;
  a.issuer_cert = cred.certificate.Ref();
  a.signature = Sign(cred.key, hash_fn, a.SignedBytes());
  return a;
}

void NotarialAuthority::RequireCertificateValid(const Certificate& c,
                                                TimeInstant at) {
  bool valid = false;
  try {
    // The NA fetches the chain and CRLs itself.
    VerificationData vd = world_.Collect(c.Ref(), at);
    valid = vd.leaf == c && ChainValid(vd.Chain(), vd.crls, at);
  } catch (const Error&) {
    valid = false;
  }
  if (!valid) {
    throw Error(Errc::kNaCertificateInvalid,
                "certificate '" + c.subject + "' not valid at " + FormatTime(at));
  }
}

void NotarialAuthority::RequireHashSecure(HashFunctionId hash_fn,
                                          TimeInstant clock, Errc code) {
  if (!inventory_.SecureAt(hash_fn, clock) ||
      !inventory_.SecureAt(PairedParams(hash_fn), clock)) {
    throw Error(code, std::string(HashName(hash_fn)) + " not secure at " +
                          FormatTime(clock));
  }
}

Bytes NotarialAuthority::CheckNawOperation(const NaExtras& x, HashFunctionId h,
                                           TimeInstant clock) {
  switch (x.operation) {
    case NaOperation::kInit: {
      if (x.claimed_history.size() != 1 || x.claimed_history[0].hash_fn != h ||
          x.original_time != clock) {
        throw Error(Errc::kNaBadRequest, "initialization needs H_0 only");
      }
      for (const Certificate& c : x.certificates) RequireCertificateValid(c, clock);
      RequireHashSecure(h, clock, Errc::kNaHashInsecure);
      return NawAttestedBytes(x.claimed_history, x.certificates);
    }
    case NaOperation::kRenew: {
      if (!x.prior.has_value() || !x.prior_verification.has_value() ||
          x.claimed_history.empty() || x.claimed_history.back().hash_fn != h ||
          clock < x.original_time) {
        throw Error(Errc::kNaBadRequest, "incomplete renewal request");
      }
      const Attestation& prior = *x.prior;
      const bool hash_change = prior.hash_fn != h;
      std::vector<HashValue> old_history = x.claimed_history;
      if (hash_change) old_history.pop_back();
      if (old_history.empty()) {
        throw Error(Errc::kNaBadRequest, "empty prior hash history");
      }
      Bytes old_bytes = NawAttestedBytes(old_history, x.certificates);
      Bytes old_digest;
      if (x.prior_cumulation.has_value()) {
        const AuthPath& path = *x.prior_cumulation;
        if (path.hash_fn != prior.hash_fn || !PathShapeConsistent(path)) {
          throw Error(Errc::kNaPriorInvalid, "prior cumulation path malformed");
        }
        old_digest = Hash(prior.hash_fn,
                          Concat({ToBytes(HashName(prior.hash_fn)),
                                  RecomputeRoot(old_bytes, path)}));
      } else {
        old_digest = Hash(prior.hash_fn, old_bytes);
      }
      AttestationCheck check = VerifyAttestationDigest(
          prior, *x.prior_verification, old_digest, nullptr);
      if (!check.valid || prior.issuer_kind != IssuerKind::kNa ||
          prior.stated_time != x.original_time) {
        throw Error(Errc::kNaPriorInvalid,
                    check.diagnostics.empty() ? std::string("prior attestation")
                                              : check.diagnostics[0].detail);
      }
      RequireHashSecure(h, clock, Errc::kNaHashInsecure);
      if (hash_change) {
        RequireHashSecure(prior.hash_fn, clock, Errc::kNaOldHashInsecure);
      }
      return NawAttestedBytes(x.claimed_history, x.certificates);
    }
    case NaOperation::kMigrate: {
      if (x.claimed_history.size() != 1 || x.claimed_history[0].hash_fn != h ||
          clock < x.original_time || x.subject_names.empty()) {
        throw Error(Errc::kNaBadRequest, "malformed migration request");
      }
      EvidenceRecord source;
      DocumentSet docs;
      try {
        source = ParseRecord(std::string_view(x.source_record));
        for (const auto& [name, encoded] : x.source_documents) {
          docs[name] = InputData::Decode(encoded);
        }
      } catch (const Error& e) {
        throw Error(Errc::kNaBadRequest, std::string("migration source: ") + e.what());
      }
      // The notary verifies the old proof itself, for every handed-over
      // document, and derives the original time from it.
      std::optional<TimeInstant> t0;
      std::vector<Bytes> leaves;
      std::vector<Certificate> signers;
      for (const std::string& name : x.subject_names) {
        auto doc = docs.find(name);
        if (doc == docs.end()) {
          throw Error(Errc::kNaBadRequest, "document '" + name + "' not supplied");
        }
        VerifyOptions o;
        o.at = clock;
        DocumentVerdict v = VerifyDocument(source, name, docs, world_, inventory_, o);
        if (!v.valid) {
          throw Error(Errc::kNaPriorInvalid,
                      "source proof of '" + name + "' invalid: " +
                          (v.diagnostics.empty() ? "" : v.diagnostics[0].detail));
        }
        TimeInstant first = FirstAttestationTime(source, name);
        t0 = t0.has_value() ? std::min(*t0, first) : first;
        const Certificate& c = doc->second.signature.signer_cert;
        RequireCertificateValid(c, first);
        if (std::find(signers.begin(), signers.end(), c) == signers.end()) {
          signers.push_back(c);
        }
        leaves.push_back(doc->second.Encode());
      }
      if (*t0 != x.original_time) {
        throw Error(Errc::kNaBadRequest, "claimed original time is not the first attestation");
      }
      if (signers != x.certificates) {
        throw Error(Errc::kNaBadRequest, "certificate list does not match the signers");
      }
      RequireHashSecure(h, clock, Errc::kNaHashInsecure);
      Bytes value = leaves.size() == 1 ? Hash(h, leaves[0])
                                       : MerkleTree(h, leaves).root();
      if (value != x.claimed_history[0].value) {
        throw Error(Errc::kNaBadRequest, "claimed value does not match the documents");
      }
      return NawAttestedBytes(x.claimed_history, x.certificates);
    }
    default:
      throw Error(Errc::kNaBadRequest, "not a NAW operation");
  }
}

Attestation NotarialAuthority::Attest(const AttestRequest& request,
                                      TimeInstant clock) {
  if (!request.na_extras.has_value()) {
    throw Error(Errc::kNaBadRequest, "notarial request without extras");
  }
  if (request.payload_digest.size() != DigestSize(request.hash_fn)) {
    throw Error(Errc::kNaBadRequest, "payload digest size");
  }
  std::lock_guard<std::mutex> lock(mu_);
  const NaExtras& x = *request.na_extras;
  const HashFunctionId h = request.hash_fn;
  if (!x.members.empty() && x.operation != NaOperation::kCumulate) {
    throw Error(Errc::kNaBadRequest, "members outside a cumulation");
  }

  switch (x.operation) {
    case NaOperation::kNotarize: {
      for (const Certificate& c : x.certificates) RequireCertificateValid(c, clock);
      RequireHashSecure(h, clock, Errc::kNaHashInsecure);
      return Issue(h, request.payload_digest, clock, clock);
    }
    case NaOperation::kInit:
    case NaOperation::kMigrate:
    case NaOperation::kRenew: {
      Bytes bytes = CheckNawOperation(x, h, clock);
      if (Hash(h, bytes) != request.payload_digest) {
        throw Error(Errc::kNaBadRequest,
                    "payload digest does not match the claimed history");
      }
      return Issue(h, request.payload_digest, x.original_time, clock);
    }
    case NaOperation::kRewrap: {
      if (!x.prior.has_value() || !x.prior_verification.has_value() ||
          x.prior->hash_fn != h) {
        throw Error(Errc::kNaBadRequest, "incomplete rewrap request");
      }
      AttestationCheck check = VerifyAttestationDigest(
          *x.prior, *x.prior_verification, request.payload_digest, nullptr);
      if (!check.valid || x.prior->issuer_kind != IssuerKind::kNa) {
        throw Error(Errc::kNaPriorInvalid, "prior attestation");
      }
      RequireHashSecure(h, clock, Errc::kNaHashInsecure);
      return Issue(h, request.payload_digest, x.prior->stated_time, clock);
    }
    case NaOperation::kCumulate: {
      if (x.members.empty()) {
        throw Error(Errc::kNaBadRequest, "empty cumulation");
      }
      RequireHashSecure(h, clock, Errc::kNaHashInsecure);
      std::optional<TimeInstant> stated;
      bool plain = false;
      std::vector<Bytes> leaves;
      for (const NaMember& m : x.members) {
        if (m.leaf_hash.size() != DigestSize(h)) {
          throw Error(Errc::kNaBadRequest, "member leaf hash size");
        }
        if (m.extras.has_value()) {
          Bytes bytes = CheckNawOperation(*m.extras, h, clock);
          if (Hash(h, bytes) != m.leaf_hash) {
            throw Error(Errc::kNaBadRequest,
                        "member leaf does not match its claimed history");
          }
          if (stated.has_value() && *stated != m.extras->original_time) {
            throw Error(Errc::kNaBadRequest,
                        "cumulated NAW members differ in original time");
          }
          stated = m.extras->original_time;
        } else {
          plain = true;
        }
        leaves.push_back(m.leaf_hash);
      }
      if (plain && stated.has_value() && *stated != clock) {
        throw Error(Errc::kNaBadRequest,
                    "renewed NAW members cannot share a fresh attestation");
      }
      Bytes root = RootFromLeafHashes(h, std::move(leaves));
      Bytes expected = Hash(h, Concat({ToBytes(HashName(h)), root}));
      if (expected != request.payload_digest) {
        throw Error(Errc::kNaBadRequest, "payload digest is not the member root");
      }
      return Issue(h, request.payload_digest, stated.value_or(clock), clock);
    }
  }
  throw Error(Errc::kNaBadRequest, "unknown operation");
}

VerificationData CollectVerificationData(VerificationSource& source,
                                         const Attestation& attestation,
                                         TimeInstant at) {
  return source.Collect(attestation.issuer_cert, at);
}

std::string_view CategoryName(Category c) {
  switch (c) {
    case Category::kDigestMismatch: return "digest-mismatch";
    case Category::kSignatureInvalid: return "signature-invalid";
    case Category::kChainInvalid: return "chain-invalid";
    case Category::kInsecurePrimitive: return "insecure-primitive";
    case Category::kRenewalGap: return "renewal-gap";
    case Category::kMissingData: return "missing-data";
    case Category::kMalformed: return "malformed";
  }
  return "unknown";
}

AttestationCheck VerifyAttestationDigest(const Attestation& att,
                                         const VerificationData& vd,
                                         ByteView expected_digest,
                                         const SecurityInventory* inv) {
  AttestationCheck out;
  auto fail = [&](Category c, std::string detail) {
    out.valid = false;
    out.diagnostics.push_back({c, std::move(detail)});
  };
  if (!std::equal(att.attested_digest.begin(), att.attested_digest.end(),
                  expected_digest.begin(), expected_digest.end())) {
    fail(Category::kDigestMismatch, "attested digest does not match");
  }
  if (vd.leaf.Ref() != att.issuer_cert) {
    fail(Category::kChainInvalid,
         "verification data is for a different certificate");
  }
  if (!Verify(vd.leaf.public_key, att.hash_fn, att.SignedBytes(),
              att.signature)) {
    fail(Category::kSignatureInvalid, "attestation signature does not verify");
  }
  try {
    if (!ChainValid(vd.Chain(), vd.crls, vd.collected_at)) {
      fail(Category::kChainInvalid, "certificate chain invalid at " +
                                        FormatTime(vd.collected_at));
    }
  } catch (const Error& e) {
    fail(Category::kChainInvalid, e.what());
  }
  if (vd.collected_at < att.stated_time) {
    fail(Category::kChainInvalid,
         "verification data collected before the attestation time");
  }
  if (inv != nullptr) {
    try {
      if (!inv->SecureAt(att.hash_fn, vd.collected_at)) {
        fail(Category::kInsecurePrimitive,
             std::string(HashName(att.hash_fn)) + " insecure at " +
                 FormatTime(vd.collected_at));
      }
      if (!inv->SecureAt(vd.leaf.params, vd.collected_at)) {
        fail(Category::kInsecurePrimitive,
             SignatureParamsName(vd.leaf.params) + " insecure at " +
                 FormatTime(vd.collected_at));
      }
    } catch (const Error& e) {
      fail(Category::kMalformed, e.what());
    }
  }
  return out;
}

AttestationCheck VerifyAttestation(const Attestation& att,
                                   const VerificationData& vd,
                                   ByteView attested_bytes,
                                   const SecurityInventory& inv) {
  return VerifyAttestationDigest(att, vd, Hash(att.hash_fn, attested_bytes),
                                 &inv);
}

}  // namespace mops
