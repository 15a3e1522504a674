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

#include <gtest/gtest.h>

#include "mops/attestation.h"
#include "mops/error.h"
#include "test_support.h"

namespace mops {
namespace {

using testing::Fixture;
using testing::kH256;
using testing::kH384;

AttestRequest TsaRequest(HashFunctionId h, ByteView data, TimeInstant t) {
  AttestRequest r;
  r.hash_fn = h;
  r.payload_digest = Hash(h, data);
  r.requested_time = t;
  return r;
}

Errc CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kUsage;
}

bool HasCategory(const AttestationCheck& c, Category cat) {
  for (const Diagnostic& d : c.diagnostics) {
    if (d.category == cat) return true;
  }
  return false;
}

TEST(AttestationTest, TimestampVerifies) {
  Fixture fx;
  Bytes data = ToBytes("hello");
  Attestation a = fx.tsa.Attest(TsaRequest(kH256, data, fx.t0), fx.t0);
  EXPECT_EQ(a.issuer_kind, IssuerKind::kTsa);
  EXPECT_EQ(a.stated_time, fx.t0);
  EXPECT_EQ(Attestation::Decode(a.Encode()), a);
  VerificationData vd = CollectVerificationData(fx.world, a, fx.t0);
  EXPECT_TRUE(VerifyAttestation(a, vd, data, fx.inv).valid);
}

TEST(AttestationTest, DetectsWrongDataAndSignature) {
  Fixture fx;
  Bytes data = ToBytes("hello");
  Attestation a = fx.tsa.Attest(TsaRequest(kH256, data, fx.t0), fx.t0);
  VerificationData vd = CollectVerificationData(fx.world, a, fx.t0);
  AttestationCheck wrong = VerifyAttestation(a, vd, ToBytes("hellO"), fx.inv);
  EXPECT_FALSE(wrong.valid);
  EXPECT_TRUE(HasCategory(wrong, Category::kDigestMismatch));
  Attestation bad = a;
  bad.signature[10] ^= 0x40;
  AttestationCheck sig = VerifyAttestation(bad, vd, data, fx.inv);
  EXPECT_FALSE(sig.valid);
  EXPECT_TRUE(HasCategory(sig, Category::kSignatureInvalid));
  Attestation moved = a;
  moved.stated_time = AddDays(a.stated_time, 1);
  EXPECT_FALSE(VerifyAttestation(moved, vd, data, fx.inv).valid);
}

TEST(AttestationTest, ChainMustBeValidAtCollection) {
  Fixture fx;
  Bytes data = ToBytes("x");
  Attestation a = fx.tsa.Attest(TsaRequest(kH256, data, fx.t0), fx.t0);
  Certificate cert = fx.world.FindCertificate(a.issuer_cert);
  VerificationData late =
      CollectVerificationData(fx.world, a, AddDays(cert.not_after, 2));
  AttestationCheck check = VerifyAttestation(a, late, data, fx.inv);
  EXPECT_FALSE(check.valid);
  EXPECT_TRUE(HasCategory(check, Category::kChainInvalid));
}

TEST(AttestationTest, InsecurePrimitiveAtCollection) {
  Fixture fx;
  Bytes data = ToBytes("x");
  TimeInstant t = FromDate(2037, 11, 1);
  Attestation a = fx.tsa.Attest(TsaRequest(kH256, data, t), t);
  VerificationData ok = CollectVerificationData(fx.world, a, FromDate(2037, 12, 1));
  EXPECT_TRUE(VerifyAttestation(a, ok, data, fx.inv).valid);
  VerificationData late = ok;
  late.collected_at = FromDate(2038, 1, 2);
  AttestationCheck check = VerifyAttestation(a, late, data, fx.inv);
  EXPECT_FALSE(check.valid);
  EXPECT_TRUE(HasCategory(check, Category::kInsecurePrimitive));
}

TEST(AttestationTest, TimestampRejectsNotarialExtras) {
  Fixture fx;
  AttestRequest r = TsaRequest(kH256, ToBytes("x"), fx.t0);
  r.na_extras = NaExtras{};
  EXPECT_EQ(CodeOf([&] { fx.tsa.Attest(r, fx.t0); }), Errc::kNaBadRequest);
  EXPECT_EQ(AttestRequest::Decode(r.Encode()), r);
}

TEST(AttestationTest, NotaryRequiresExtras) {
  Fixture fx;
  AttestRequest r = TsaRequest(kH256, ToBytes("x"), fx.t0);
  EXPECT_EQ(CodeOf([&] { fx.na.Attest(r, fx.t0); }), Errc::kNaBadRequest);
  r.na_extras = NaExtras{};
  Attestation a = fx.na.Attest(r, fx.t0);
  EXPECT_EQ(a.issuer_kind, IssuerKind::kNa);
  EXPECT_TRUE(VerifyAttestation(a, CollectVerificationData(fx.world, a, fx.t0),
                                ToBytes("x"), fx.inv)
                  .valid);
}

TEST(AttestationTest, NotaryInitGuards) {
  Fixture fx;
  const InputData& doc = fx.docs.at("doc0");
  Certificate signer = doc.signature.signer_cert;
  auto init = [&](HashFunctionId h, TimeInstant clock) {
    NaExtras x;
    x.operation = NaOperation::kInit;
    x.certificates = {signer};
    x.claimed_history = {{h, Hash(h, doc.Encode())}};
    x.original_time = clock;
    AttestRequest r;
    r.hash_fn = h;
    r.payload_digest = Hash(h, NawAttestedBytes(x.claimed_history, x.certificates));
    r.requested_time = clock;
    r.na_extras = x;
    return fx.na.Attest(r, clock);
  };
  Attestation a = init(kH256, fx.t0);
  EXPECT_EQ(a.stated_time, fx.t0);
  EXPECT_EQ(CodeOf([&] { init(kH256, AddDays(signer.not_after, 1)); }),
            Errc::kNaCertificateInvalid);
  EXPECT_EQ(CodeOf([&] { init(kH256, FromDate(2038, 6, 1)); }),
            Errc::kNaCertificateInvalid);

  // A certificate still valid in 2038 isolates the hash check.
  TimeInstant late = FromDate(2038, 3, 1);
  signer = fx.world.LeafCredential("signer", kH384, late).certificate;
  EXPECT_EQ(CodeOf([&] { init(kH256, late); }), Errc::kNaHashInsecure);
  EXPECT_NO_THROW(init(kH384, late));
}

TEST(AttestationTest, NotaryRejectsMismatchedDigest) {
  Fixture fx;
  NaExtras x;
  x.operation = NaOperation::kInit;
  x.claimed_history = {{kH256, Hash(kH256, ToBytes("d"))}};
  x.original_time = fx.t0;
  AttestRequest r;
  r.hash_fn = kH256;
  r.payload_digest = Hash(kH256, ToBytes("something else"));
  r.requested_time = fx.t0;
  r.na_extras = x;
  EXPECT_EQ(CodeOf([&] { fx.na.Attest(r, fx.t0); }), Errc::kNaBadRequest);
}

TEST(AttestationTest, NawAttestedBytesLayout) {
  HashValue h0{kH256, Bytes(32, 1)};
  HashValue h1{kH384, Bytes(48, 2)};
  Bytes one = NawAttestedBytes({h0}, {});
  Bytes two = NawAttestedBytes({h0, h1}, {});
  EXPECT_EQ(Bytes(two.begin(), two.begin() + one.size()), one);
  EXPECT_NE(one, NawAttestedBytes({h1}, {}));
}

TEST(AttestationTest, NamesRoundTrip) {
  for (IssuerKind k : {IssuerKind::kTsa, IssuerKind::kNa}) {
    EXPECT_EQ(ParseIssuerKind(IssuerKindName(k)), k);
  }
  EXPECT_EQ(CategoryName(Category::kRenewalGap), "renewal-gap");
  EXPECT_THROW(ParseIssuerKind("CA"), Error);
}

}  // namespace
}  // namespace mops
