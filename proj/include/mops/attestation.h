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
#ifndef MOPS_ATTESTATION_H_
#define MOPS_ATTESTATION_H_

#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mops/bytes.h"
#include "mops/crypto.h"
#include "mops/error.h"
#include "mops/inventory.h"
#include "mops/merkle.h"
#include "mops/pki.h"
#include "mops/time.h"
#include "mops/world.h"

namespace mops {

enum class IssuerKind : std::uint8_t { kTsa = 0, kNa = 1 };

std::string_view IssuerKindName(IssuerKind kind);
IssuerKind ParseIssuerKind(std::string_view name);

struct Attestation {
  IssuerKind issuer_kind = IssuerKind::kTsa;
  HashFunctionId hash_fn = HashFunctionId::kSha256;
  Bytes attested_digest;
  TimeInstant stated_time;
  CertificateRef issuer_cert;
  Bytes signature;

  // Everything except the signature; this is what the issuer signs.
  Bytes SignedBytes() const;
  Bytes Encode() const;
  static Attestation Decode(ByteView bytes);

  bool operator==(const Attestation&) const = default;
};

enum class NaOperation : std::uint8_t {
  // Attest a client digest after checking hash security (and any supplied
  // certificates). Used when an NA backs AS/MTS/MDS/SLS or a cumulation.
  kNotarize = 0,
  kInit = 1,     // NAW initialization
  kRenew = 2,    // NAW attestation or hash renewal
  kRewrap = 3,   // re-attest the prior digest, keeping the prior stated time
  kMigrate = 4,  // NAW creation from a verified older proof
  // One attestation over a tree of member requests; members carrying extras
  // are checked as NAW requests of their own.
  kCumulate = 5,
};

struct NaMember;

struct NaExtras {
  NaOperation operation = NaOperation::kNotarize;
  std::vector<Certificate> certificates;
  std::vector<HashValue> claimed_history;
  std::optional<Attestation> prior;
  std::optional<VerificationData> prior_verification;
  TimeInstant original_time;
  // kRenew: path of the prior NAW digest into a shared (cumulated) tree.
  std::optional<AuthPath> prior_cumulation;
  std::vector<NaMember> members;  // kCumulate only
  // kMigrate: the old proof, the names it hands over (in subject order) and
  // every document the notary needs to verify it, as encoded InputData.
  std::string source_record;
  std::vector<std::string> subject_names;
  std::vector<std::pair<std::string, Bytes>> source_documents;

  bool operator==(const NaExtras&) const;
};

struct NaMember {
  Bytes leaf_hash;  // H(leaf bytes) under the request's hash function
  std::optional<NaExtras> extras;

  bool operator==(const NaMember&) const = default;
};

inline bool NaExtras::operator==(const NaExtras&) const = default;

struct AttestRequest {
  Bytes payload_digest;
  HashFunctionId hash_fn = HashFunctionId::kSha256;
  TimeInstant requested_time;
  std::optional<NaExtras> na_extras;

  Bytes Encode() const;
  static AttestRequest Decode(ByteView bytes);

  bool operator==(const AttestRequest&) const = default;
};

// The byte string an NAW attestation covers:
// H_0 || v_0 || ... || H_n || v_n || enc(c_1) || ... || enc(c_m).
Bytes NawAttestedBytes(const std::vector<HashValue>& history,
                       const std::vector<Certificate>& certificates);

class Attester {
 public:
  virtual ~Attester() = default;
  virtual IssuerKind kind() const = 0;
  virtual Attestation Attest(const AttestRequest& request, TimeInstant clock) = 0;
};

// Signature-based timestamping: signs the digest with the current time.
class TimestampAuthority : public Attester {
 public:
  explicit TimestampAuthority(PkiWorld& world) : world_(world) {}
  IssuerKind kind() const override { return IssuerKind::kTsa; }
  // Throws Error(kNaBadRequest) if NA extras are supplied,
  // Error(kCertificateExpired) if no valid TSA certificate exists.
  Attestation Attest(const AttestRequest& request, TimeInstant clock) override;

 private:
  PkiWorld& world_;
  std::mutex mu_;
};

// Notarial authority: checks properties of the input before attesting.
class NotarialAuthority : public Attester {
 public:
  NotarialAuthority(PkiWorld& world, SecurityInventory inventory)
      : world_(world), inventory_(std::move(inventory)) {}
  IssuerKind kind() const override { return IssuerKind::kNa; }
  // Each failed check throws its own code: kNaCertificateInvalid,
  // kNaHashInsecure, kNaPriorInvalid, kNaOldHashInsecure; structural problems
  // with the request throw kNaBadRequest.
  Attestation Attest(const AttestRequest& request, TimeInstant clock) override;

  const SecurityInventory& inventory() const { return inventory_; }

 private:
  Attestation Issue(HashFunctionId hash_fn, const Bytes& digest,
                    TimeInstant stated_time, TimeInstant clock);
  void RequireCertificateValid(const Certificate& c, TimeInstant at);
  // Runs the checks of a NAW operation and returns the bytes it attests.
  Bytes CheckNawOperation(const NaExtras& x, HashFunctionId hash_fn,
                          TimeInstant clock);
  void RequireHashSecure(HashFunctionId hash_fn, TimeInstant clock, Errc code);

  PkiWorld& world_;
  SecurityInventory inventory_;
  std::mutex mu_;
};

VerificationData CollectVerificationData(VerificationSource& source,
                                         const Attestation& attestation,
                                         TimeInstant at);

enum class Category : std::uint8_t {
  kDigestMismatch = 0,
  kSignatureInvalid,
  kChainInvalid,
  kInsecurePrimitive,
  kRenewalGap,
  kMissingData,
  kMalformed,
};

std::string_view CategoryName(Category c);

struct Diagnostic {
  Category category;
  std::string detail;

  bool operator==(const Diagnostic&) const = default;
};

struct AttestationCheck {
  bool valid = true;
  std::vector<Diagnostic> diagnostics;
};

// Checks digest, signature, chain validity at vd.collected_at and, if
// check_primitives, that hash and signature parameters were secure then.
AttestationCheck VerifyAttestationDigest(const Attestation& att,
                                         const VerificationData& vd,
                                         ByteView expected_digest,
                                         const SecurityInventory* inv);

AttestationCheck VerifyAttestation(const Attestation& att,
                                   const VerificationData& vd,
                                   ByteView attested_bytes,
                                   const SecurityInventory& inv);

}  // namespace mops

#endif  // MOPS_ATTESTATION_H_
