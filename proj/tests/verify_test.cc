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

#include <algorithm>
#include <random>

#include "mops/error.h"
#include "mops/structures.h"
#include "mops/verify.h"
#include "test_support.h"

namespace mops {
namespace {

using testing::Fixture;
using testing::kH256;
using testing::kH384;
using testing::kH512;

bool Has(const Verdict& v, Category c) {
  auto cats = v.Categories();
  return std::find(cats.begin(), cats.end(), c) != cats.end();
}

// Random honest histories: every intermediate proof must verify.
TEST(VerifyTest, HonestHistoriesVerify) {
  std::mt19937_64 rng(11);
  for (StructureKind kind : kAllStructures) {
    for (int round = 0; round < 3; ++round) {
      Fixture fx;
      auto names = fx.AddDocs("r" + std::to_string(round) + "_", 5);
      Attester& att = fx.AttesterFor(kind);
      bool sequence = kind == StructureKind::kMds || kind == StructureKind::kSls;
      std::size_t first = sequence ? 1 : rng() % 3 + 1;
      std::vector<std::string> initial(names.begin(), names.begin() + first);
      bool batch = kind != StructureKind::kMts && initial.size() > 1;
      EvidenceRecord r = Protect(kind, initial, batch, fx.docs, fx.t0, kH256, att, fx.ctx);
      std::size_t next = first;
      TimeInstant now = fx.t0;
      HashFunctionId h = kH256;
      for (int step = 0; step < 6; ++step) {
        int op = static_cast<int>(rng() % 3);
        if (op == 0 && sequence && next < names.size()) {
          now = AddDays(now, static_cast<std::int64_t>(rng() % 30 + 1));
          r = AddDocument(r, names[next++], now, h, fx.docs, att, fx.ctx);
        } else if (op == 1 && h != kH512) {
          now = AddDays(now, static_cast<std::int64_t>(rng() % 30 + 1));
          h = h == kH256 ? kH384 : kH512;
          r = Renew(r, now, h, fx.docs, att, fx.ctx);
        } else {
          now = fx.NextRenewal(r, now);
          r = Renew(r, now, h, fx.docs, att, fx.ctx);
        }
        Verdict v = fx.Verify(r, AddDays(now, 1));
        ASSERT_TRUE(v.valid) << StructureName(kind) << " step " << step << ": "
                             << testing::DescribeVerdict(v);
      }
    }
  }
}

TEST(VerifyTest, LateAttestationIsARenewalGap) {
  Fixture fx;
  EvidenceRecord r = AsInit("doc0", fx.docs, fx.t0, kH256, fx.tsa, fx.ctx);
  TimeInstant end = HeadValidityEnd(r, fx.ctx, fx.t0);
  Proposal p = ProposeRenewal(r, kH256, AddDays(end, -1), fx.docs, fx.ctx);
  TimeInstant late = AddDays(end, 30);
  Attestation a = fx.tsa.Attest(MakeRequest(p, IssuerKind::kTsa), late);
  EvidenceRecord gap = Commit(p, a);
  Verdict v = fx.Verify(gap, AddDays(late, 1));
  EXPECT_FALSE(v.valid);
  EXPECT_TRUE(Has(v, Category::kRenewalGap)) << testing::DescribeVerdict(v);
}

TEST(VerifyTest, ExpiredHeadIsReported) {
  Fixture fx;
  EvidenceRecord r = AsInit("doc0", fx.docs, fx.t0, kH256, fx.tsa, fx.ctx);
  TimeInstant end = HeadValidityEnd(r, fx.ctx, fx.t0);
  EXPECT_TRUE(fx.Verify(r, AddDays(end, -1)).valid);
  EXPECT_FALSE(fx.Verify(r, AddDays(end, 1)).valid);
}

TEST(VerifyTest, ChangedDocumentIsADigestMismatch) {
  Fixture fx;
  for (StructureKind kind : kAllStructures) {
    EvidenceRecord r = Protect(kind, {"doc1"}, false, fx.docs, fx.t0, kH256,
                               fx.AttesterFor(kind), fx.ctx);
    for (std::size_t bit : {0u, 7u, 40u}) {
      DocumentSet changed = fx.docs;
      changed.at("doc1").document[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      Verdict v = fx.Verify(r, changed, AddDays(fx.t0, 1));
      EXPECT_FALSE(v.valid);
      EXPECT_TRUE(Has(v, Category::kDigestMismatch)) << StructureName(kind);
    }
  }
}

TEST(VerifyTest, MissingDocumentIsMissingData) {
  Fixture fx;
  EvidenceRecord r = Protect(StructureKind::kMts, {"doc0", "doc1"}, true, fx.docs,
                             fx.t0, kH256, fx.tsa, fx.ctx);
  DocumentSet partial{{"doc0", fx.docs.at("doc0")}};
  Verdict v = fx.Verify(r, partial, AddDays(fx.t0, 1));
  EXPECT_FALSE(v.valid);
  EXPECT_TRUE(Has(v, Category::kMissingData));
}

TEST(VerifyTest, NotaryProofFaultsAreAllDetected) {
  Fixture fx;
  TimeInstant at;
  EvidenceRecord r = testing::FaultFixture(fx, StructureKind::kNaw, &at);
  ASSERT_TRUE(fx.Verify(r, at).valid);
  testing::FaultStats stats = testing::InjectFaults(fx, r, fx.docs, at);
  EXPECT_TRUE(stats.ok()) << stats.flips << " flips, " << stats.undetected
                          << " undetected, " << stats.wrong_category
                          << " wrong category"
                          << (stats.failures.empty() ? "" : ": " + stats.failures[0]);
  EXPECT_GT(stats.flips_by_group["hash-history"], 0u);
  EXPECT_GT(stats.flips_by_group["certificate"], 0u);
}

TEST(VerifyTest, SkipListChecksFewerAttestations) {
  Fixture fx;
  auto names = fx.AddDocs("s", 8);
  VerifyOptions o;
  o.at = AddDays(fx.t0, 1);
  o.record_integrity = false;
  EvidenceRecord mds = Protect(StructureKind::kMds, names, false, fx.docs, fx.t0,
                               kH256, fx.tsa, fx.ctx);
  EvidenceRecord sls = Protect(StructureKind::kSls, names, false, fx.docs, fx.t0,
                               kH256, fx.tsa, fx.ctx);
  DocumentVerdict dm = VerifyDocument(mds, names[0], fx.docs, fx.world, fx.inv, o);
  DocumentVerdict ds = VerifyDocument(sls, names[0], fx.docs, fx.world, fx.inv, o);
  ASSERT_TRUE(dm.valid);
  ASSERT_TRUE(ds.valid);
  EXPECT_EQ(dm.attestations_checked, 8u);
  EXPECT_LT(ds.attestations_checked, 8u);
  for (const std::string& n : names) {
    EXPECT_TRUE(VerifyDocument(sls, n, fx.docs, fx.world, fx.inv, o).valid) << n;
  }
}

TEST(VerifyTest, MdsAndSlsAgree) {
  Fixture fx;
  auto names = fx.AddDocs("e", 5);
  EvidenceRecord mds = Protect(StructureKind::kMds, names, false, fx.docs, fx.t0,
                               kH256, fx.tsa, fx.ctx);
  EvidenceRecord sls = Protect(StructureKind::kSls, names, false, fx.docs, fx.t0,
                               kH256, fx.tsa, fx.ctx);
  TimeInstant t = AddDays(fx.t0, 40);
  mds = Renew(mds, t, kH384, fx.docs, fx.tsa, fx.ctx);
  sls = Renew(sls, t, kH384, fx.docs, fx.tsa, fx.ctx);
  EXPECT_EQ(DocumentNames(mds), DocumentNames(sls));
  EXPECT_EQ(AttestationCount(mds), AttestationCount(sls));
  for (TimeInstant at : {AddDays(t, 1), AddYears(t, 1)}) {
    EXPECT_EQ(fx.Verify(mds, at).valid, fx.Verify(sls, at).valid);
  }
  DocumentSet changed = fx.docs;
  changed.at("e3").document[0] ^= 1;
  Verdict vm = fx.Verify(mds, changed, AddDays(t, 1));
  Verdict vs = fx.Verify(sls, changed, AddDays(t, 1));
  EXPECT_FALSE(vm.valid);
  EXPECT_FALSE(vs.valid);
  EXPECT_EQ(testing::CategoryList(vm), testing::CategoryList(vs));
}

TEST(VerifyTest, SuppliedHeadVerificationIsUsed) {
  Fixture fx;
  EvidenceRecord r = AsInit("doc0", fx.docs, fx.t0, kH256, fx.tsa, fx.ctx);
  VerifyOptions o;
  o.at = AddDays(fx.t0, 1);
  o.head_verification = fx.world.Collect(HeadAttestation(r).issuer_cert, o.at);
  EXPECT_TRUE(VerifyProof(r, fx.docs, fx.world, fx.inv, o).valid);
  o.head_verification->leaf.public_key[3] ^= 1;
  EXPECT_FALSE(VerifyProof(r, fx.docs, fx.world, fx.inv, o).valid);
}

}  // namespace
}  // namespace mops
