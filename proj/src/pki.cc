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
#include "mops/pki.h"

#include <algorithm>

#include "mops/error.h"

namespace mops {

namespace {

constexpr std::size_t kMaxHops = 3;

void EncodeRef(Encoder& e, const std::optional<CertificateRef>& ref) {
  Encoder inner;
  if (ref.has_value()) inner.Field(ref->subject).IntField(ref->serial);
  e.Field(inner.bytes());
}

std::optional<CertificateRef> DecodeRef(Decoder& d) {
  Bytes raw = d.Field();
  if (raw.empty()) return std::nullopt;
  Decoder inner(raw);
  CertificateRef ref;
  ref.subject = inner.Text();
  ref.serial = static_cast<std::uint64_t>(inner.IntField());
  inner.Finish();
  return ref;
}

void EncodeCertificateBody(Encoder& e, const Certificate& c) {
  e.Field(c.subject);
  EncodeRef(e, c.issuer);
  e.Field(c.public_key)
      .Field(SignatureParamsName(c.params))
      .IntField(c.not_before.seconds)
      .IntField(c.not_after.seconds)
      .IntField(static_cast<std::int64_t>(c.serial));
}

void EncodeCrlBody(Encoder& e, const Crl& crl) {
  EncodeRef(e, crl.issuer);
  e.IntField(crl.issued_at.seconds);
  Encoder serials;
  for (std::uint64_t s : crl.revoked_serials) serials.U64(s);
  e.Field(serials.bytes());
}

}  // namespace

Bytes Certificate::SignedBytes() const {
  Encoder e;
  EncodeCertificateBody(e, *this);
  return e.Take();
}

void Certificate::EncodeTo(Encoder& e) const {
  EncodeCertificateBody(e, *this);
  e.Field(issuer_signature);
}

Certificate Certificate::DecodeFrom(Decoder& d) {
  Certificate c;
  c.subject = d.Text();
  c.issuer = DecodeRef(d);
  c.public_key = d.Field();
  c.params = ParseSignatureParams(d.Text());
  c.not_before.seconds = d.IntField();
  c.not_after.seconds = d.IntField();
  c.serial = static_cast<std::uint64_t>(d.IntField());
  c.issuer_signature = d.Field();
  return c;
}

Bytes Certificate::Encode() const {
  Encoder e;
  EncodeTo(e);
  return e.Take();
}

Certificate Certificate::Decode(ByteView bytes) {
  Decoder d(bytes);
  Certificate c = DecodeFrom(d);
  d.Finish();
  return c;
}

Bytes Crl::SignedBytes() const {
  Encoder e;
  EncodeCrlBody(e, *this);
  return e.Take();
}

void Crl::EncodeTo(Encoder& e) const {
  EncodeCrlBody(e, *this);
  e.Field(signature);
}

Crl Crl::DecodeFrom(Decoder& d) {
  Crl crl;
  std::optional<CertificateRef> ref = DecodeRef(d);
  if (!ref.has_value()) throw Error(Errc::kParse, "CRL without issuer");
  crl.issuer = *ref;
  crl.issued_at.seconds = d.IntField();
  Bytes serials = d.Field();
  if (serials.size() % 8 != 0) throw Error(Errc::kParse, "CRL serial list");
  Decoder sd(serials);
  while (!sd.AtEnd()) {
    std::uint64_t s = sd.U64();
    if (!crl.revoked_serials.empty() && s <= crl.revoked_serials.back()) {
      throw Error(Errc::kParse, "CRL serials not strictly increasing");
    }
    crl.revoked_serials.push_back(s);
  }
  crl.signature = d.Field();
  return crl;
}

Bytes Crl::Encode() const {
  Encoder e;
  EncodeTo(e);
  return e.Take();
}

Crl Crl::Decode(ByteView bytes) {
  Decoder d(bytes);
  Crl crl = DecodeFrom(d);
  d.Finish();
  return crl;
}

TimeInstant AddLifetime(TimeInstant t, const Lifetime& lifetime) {
  return AddDays(AddYears(t, lifetime.years), lifetime.days);
}

CertificateAuthority::CertificateAuthority(KeyPair key, Certificate certificate)
    : key_(std::move(key)),
      certificate_(std::move(certificate)),
      hash_fn_(PairedHash(key_.params)) {}

std::unique_ptr<CertificateAuthority> CertificateAuthority::CreateRoot(
    const std::string& subject, const SignatureParams& params,
    std::uint64_t seed, TimeInstant not_before, const Lifetime& lifetime) {
  KeyPair key = GenerateKeyPair(params, seed);
  Certificate cert;
  cert.subject = subject;
  cert.public_key = key.public_key;
  cert.params = params;
  cert.not_before = not_before;
  cert.not_after = AddLifetime(not_before, lifetime);
  cert.serial = 0;
  cert.issuer_signature = Sign(key, PairedHash(params), cert.SignedBytes());
  return std::make_unique<CertificateAuthority>(std::move(key), std::move(cert));
}

Certificate CertificateAuthority::IssueCertificate(
    const std::string& subject, const Bytes& subject_public_key,
    const SignatureParams& params, TimeInstant not_before,
    const Lifetime& lifetime) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!certificate_.ValidAt(not_before)) {
    throw Error(Errc::kIssuerExpired,
                certificate_.subject + " not valid at " + FormatTime(not_before));
  }
  Certificate cert;
  cert.subject = subject;
  cert.issuer = certificate_.Ref();
  cert.public_key = subject_public_key;
  cert.params = params;
  cert.not_before = not_before;
  cert.not_after = AddLifetime(not_before, lifetime);
  if (!(cert.not_before < cert.not_after)) {
    throw Error(Errc::kUsage, "empty certificate lifetime");
  }
  cert.serial = next_serial_++;
  cert.issuer_signature = Sign(key_, hash_fn_, cert.SignedBytes());
  issued_[cert.serial] = not_before;
  return cert;
}

Crl CertificateAuthority::IssueCrlLocked(TimeInstant at) {
  if (at < certificate_.not_before) {
    throw Error(Errc::kIssuerExpired, "CRL requested before CA validity");
  }
  if (!(at < certificate_.not_after)) {
    at.seconds = certificate_.not_after.seconds - 1;
  }
  auto it = crls_.find(at);
  if (it != crls_.end()) return it->second;
  Crl crl;
  crl.issuer = certificate_.Ref();
  crl.issued_at = at;
  for (const auto& [serial, when] : revoked_) {
    if (when <= at) crl.revoked_serials.push_back(serial);
  }
  crl.signature = Sign(key_, hash_fn_, crl.SignedBytes());
  crls_.emplace(at, crl);
  return crl;
}

Crl CertificateAuthority::Revoke(std::uint64_t serial, TimeInstant at) {
  std::lock_guard<std::mutex> lock(mu_);
  if (issued_.count(serial) == 0) {
    throw Error(Errc::kUnknownSerial, "serial " + std::to_string(serial) +
                                          " not issued by " +
                                          certificate_.subject);
  }
  if (!crls_.empty() && at < crls_.rbegin()->first) {
    throw Error(Errc::kUsage, "revocation predates a published CRL");
  }
  revoked_.emplace(serial, at);
  return IssueCrlLocked(at);
}

Crl CertificateAuthority::CrlAt(TimeInstant at) {
  std::lock_guard<std::mutex> lock(mu_);
  return IssueCrlLocked(at);
}

bool CheckRevocation(const Crl& crl, const Certificate& cert, TimeInstant at) {
  if (!cert.issuer.has_value() || crl.issuer != *cert.issuer) return false;
  if (at < crl.issued_at) return false;
  return std::binary_search(crl.revoked_serials.begin(),
                            crl.revoked_serials.end(), cert.serial);
}

bool ChainValid(const std::vector<Certificate>& chain,
                const std::vector<Crl>& crls, TimeInstant at) {
  if (chain.empty() || chain.size() > kMaxHops + 1) return false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Certificate& cert = chain[i];
    if (!cert.ValidAt(at)) return false;
    bool is_root = i + 1 == chain.size();
    const Certificate& issuer = is_root ? cert : chain[i + 1];
    if (is_root ? cert.issuer.has_value()
                : cert.issuer != std::optional<CertificateRef>(issuer.Ref())) {
      return false;
    }
    HashFunctionId issuer_hash;
    try {
      issuer_hash = PairedHash(issuer.params);
    } catch (const Error&) {
      return false;
    }
    if (!Verify(issuer.public_key, issuer_hash, cert.SignedBytes(),
                cert.issuer_signature)) {
      return false;
    }
    if (is_root) break;

    const Crl* newest = nullptr;
    for (const Crl& crl : crls) {
      if (crl.issuer == issuer.Ref() && crl.issued_at <= at &&
          (newest == nullptr || newest->issued_at < crl.issued_at)) {
        newest = &crl;
      }
    }
    if (newest == nullptr) {
      throw Error(Errc::kMissingCrl, "no CRL from " + issuer.subject +
                                         " at " + FormatTime(at));
    }
    if (!issuer.ValidAt(newest->issued_at)) return false;
    if (!Verify(issuer.public_key, issuer_hash, newest->SignedBytes(),
                newest->signature)) {
      return false;
    }
    if (CheckRevocation(*newest, cert, at)) return false;
  }
  return true;
}

std::vector<Certificate> VerificationData::Chain() const {
  std::vector<Certificate> chain;
  chain.reserve(issuer_chain.size() + 1);
  chain.push_back(leaf);
  chain.insert(chain.end(), issuer_chain.begin(), issuer_chain.end());
  return chain;
}

Bytes VerificationData::Encode() const {
  Encoder e;
  leaf.EncodeTo(e);
  e.U64(issuer_chain.size());
  for (const Certificate& c : issuer_chain) c.EncodeTo(e);
  e.U64(crls.size());
  for (const Crl& crl : crls) crl.EncodeTo(e);
  e.IntField(collected_at.seconds);
  return e.Take();
}

VerificationData VerificationData::Decode(ByteView bytes) {
  Decoder d(bytes);
  VerificationData vd;
  vd.leaf = Certificate::DecodeFrom(d);
  std::uint64_t n = d.U64();
  if (n > kMaxHops) throw Error(Errc::kParse, "issuer chain too long");
  for (std::uint64_t i = 0; i < n; ++i) {
    vd.issuer_chain.push_back(Certificate::DecodeFrom(d));
  }
  n = d.U64();
  if (n > kMaxHops) throw Error(Errc::kParse, "too many CRLs");
  for (std::uint64_t i = 0; i < n; ++i) vd.crls.push_back(Crl::DecodeFrom(d));
  vd.collected_at.seconds = d.IntField();
  d.Finish();
  return vd;
}

}  // namespace mops
