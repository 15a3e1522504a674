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
#ifndef MOPS_PKI_H_
#define MOPS_PKI_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mops/bytes.h"
#include "mops/crypto.h"
#include "mops/time.h"

namespace mops {

struct CertificateRef {
  std::string subject;
  std::uint64_t serial = 0;

  bool operator==(const CertificateRef&) const = default;
  auto operator<=>(const CertificateRef&) const = default;
};

struct Certificate {
  std::string subject;
  // Absent for a self-signed root.
  std::optional<CertificateRef> issuer;
  Bytes public_key;
  SignatureParams params;
  TimeInstant not_before;
  TimeInstant not_after;
  std::uint64_t serial = 0;
  Bytes issuer_signature;

  CertificateRef Ref() const { return {subject, serial}; }
  bool ValidAt(TimeInstant t) const { return not_before <= t && t < not_after; }
  // Canonical encoding without the signature; this is what the issuer signs.
  Bytes SignedBytes() const;
  Bytes Encode() const;
  static Certificate Decode(ByteView bytes);
  // Writes/reads the encoding as fields of an enclosing encoder.
  void EncodeTo(Encoder& e) const;
  static Certificate DecodeFrom(Decoder& d);

  bool operator==(const Certificate&) const = default;
};

struct Crl {
  CertificateRef issuer;
  TimeInstant issued_at;
  std::vector<std::uint64_t> revoked_serials;  // sorted, unique
  Bytes signature;

  Bytes SignedBytes() const;
  Bytes Encode() const;
  static Crl Decode(ByteView bytes);
  void EncodeTo(Encoder& e) const;
  static Crl DecodeFrom(Decoder& d);

  bool operator==(const Crl&) const = default;
};

struct Lifetime {
  int years = 0;
  std::int64_t days = 0;
};

TimeInstant AddLifetime(TimeInstant t, const Lifetime& lifetime);

// A certification authority: key, certificate, serial counter, CRL history.
// Mutating calls are serialized internally.
class CertificateAuthority {
 public:
  CertificateAuthority(KeyPair key, Certificate certificate);

  static std::unique_ptr<CertificateAuthority> CreateRoot(
      const std::string& subject, const SignatureParams& params,
      std::uint64_t seed, TimeInstant not_before, const Lifetime& lifetime);

  const Certificate& certificate() const { return certificate_; }
  const KeyPair& key() const { return key_; }

  // Throws Error(kIssuerExpired) if this CA is not valid at not_before.
  Certificate IssueCertificate(const std::string& subject,
                               const Bytes& subject_public_key,
                               const SignatureParams& params,
                               TimeInstant not_before,
                               const Lifetime& lifetime);

  // Throws Error(kUnknownSerial). Returns the CRL issued at the revocation.
  Crl Revoke(std::uint64_t serial, TimeInstant at);

  // The CRL this CA publishes at `at` (clamped into its own validity).
  // Repeated calls for the same instant return the same CRL.
  Crl CrlAt(TimeInstant at);

 private:
  Crl IssueCrlLocked(TimeInstant at);

  KeyPair key_;
  Certificate certificate_;
  HashFunctionId hash_fn_;
  std::mutex mu_;
  std::uint64_t next_serial_ = 1;
  std::map<std::uint64_t, TimeInstant> issued_;
  std::map<std::uint64_t, TimeInstant> revoked_;
  std::map<TimeInstant, Crl> crls_;
};

// Certificate chain and revocation information captured at collected_at,
// enough to validate an attestation signature after its certificate expired.
struct VerificationData {
  Certificate leaf;
  std::vector<Certificate> issuer_chain;  // issuing CA first, root last
  std::vector<Crl> crls;                  // one per CA in issuer_chain
  TimeInstant collected_at;

  std::vector<Certificate> Chain() const;
  Bytes Encode() const;
  static VerificationData Decode(ByteView bytes);

  bool operator==(const VerificationData&) const = default;
};

// Where verifiers and renewers fetch verification data for a certificate.
class VerificationSource {
 public:
  virtual ~VerificationSource() = default;
  // Throws Error(kUnknownIssuer) if the certificate is not known.
  virtual VerificationData Collect(const CertificateRef& leaf,
                                   TimeInstant at) = 0;
};

// True if `crl` is from cert's issuer, issued no later than `at`, and
// lists the serial.
bool CheckRevocation(const Crl& crl, const Certificate& cert, TimeInstant at);

// chain[0] is the leaf, chain.back() a self-signed root, at most 3 hops.
// Throws Error(kMissingCrl) if some issuer has no CRL issued at or before at.
bool ChainValid(const std::vector<Certificate>& chain,
                const std::vector<Crl>& crls, TimeInstant at);

}  // namespace mops

#endif  // MOPS_PKI_H_
