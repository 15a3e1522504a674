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

#include <functional>

#include "mops/combine.h"
#include "mops/error.h"
#include "test_support.h"

namespace mops {
namespace {

using testing::Fixture;
using testing::kH256;
using testing::kH384;

Errc CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kUsage;
}

// One record per structure, each over its own document, under one attestation.
std::vector<EvidenceRecord> Cumulated(Fixture& fx, IssuerKind attester,
                                      const std::vector<StructureKind>& kinds) {
  std::vector<Proposal> proposals;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    proposals.push_back(ProposeInit(kinds[i], attester,
                                    DocumentItems({"doc" + std::to_string(i)}),
                                    false, kH256, fx.t0, fx.docs, fx.ctx));
  }
  Attester& a = attester == IssuerKind::kNa ? static_cast<Attester&>(fx.na)
                                            : static_cast<Attester&>(fx.tsa);
  return CumulateAttest(std::move(proposals), a, fx.t0);
}

const std::vector<StructureKind> kTsaKinds = {StructureKind::kAs, StructureKind::kMts,
                                              StructureKind::kMds, StructureKind::kSls};
const std::vector<StructureKind> kNaKinds = {StructureKind::kAs, StructureKind::kMts,
                                             StructureKind::kMds, StructureKind::kNaw};

TEST(CombineTest, OneAttestationCoversAllMembers) {
  for (IssuerKind issuer : {IssuerKind::kTsa, IssuerKind::kNa}) {
    Fixture fx;
    auto records = Cumulated(fx, issuer, issuer == IssuerKind::kNa ? kNaKinds : kTsaKinds);
    ASSERT_EQ(records.size(), 4u);
    for (const EvidenceRecord& r : records) {
      EXPECT_EQ(HeadAttestation(r), HeadAttestation(records[0]));
      Verdict v = fx.Verify(r, AddDays(fx.t0, 1));
      EXPECT_TRUE(v.valid) << StructureName(r.kind) << ": " << testing::DescribeVerdict(v);
    }
  }
}

TEST(CombineTest, CumulatedRenewalCounts) {
  struct Case {
    IssuerKind issuer;
    HashFunctionId h;
    std::size_t expected;
  };
  // Attestation renewal: members sharing a head renew together, sequences
  // alone. Hash renewal: one shared tree, NAW members in a tree of their own.
  for (Case c : {Case{IssuerKind::kTsa, kH256, 3}, Case{IssuerKind::kNa, kH256, 2},
                 Case{IssuerKind::kTsa, kH384, 1}, Case{IssuerKind::kNa, kH384, 2}}) {
    Fixture fx;
    auto kinds = c.issuer == IssuerKind::kNa ? kNaKinds : kTsaKinds;
    auto records = Cumulated(fx, c.issuer, kinds);
    Attester& a = c.issuer == IssuerKind::kNa ? static_cast<Attester&>(fx.na)
                                              : static_cast<Attester&>(fx.tsa);
    TimeInstant t = c.h == kH256 ? fx.NextRenewal(records[0], fx.t0) : AddDays(fx.t0, 30);
    CumulatedRenewal out = CumulateRenew(records, t, c.h, fx.docs, a, fx.ctx);
    EXPECT_EQ(out.attestations_issued, c.expected)
        << IssuerKindName(c.issuer) << " " << HashName(c.h);
    for (const EvidenceRecord& r : out.records) {
      EXPECT_EQ(HeadHash(r), c.h);
      Verdict v = fx.Verify(r, AddDays(t, 1));
      EXPECT_TRUE(v.valid) << StructureName(r.kind) << ": " << testing::DescribeVerdict(v);
    }
  }
}

TEST(CombineTest, BatchCoordinatorQueuesProposals) {
  Fixture fx;
  BatchCoordinator coordinator(IssuerKind::kTsa, kH256);
  coordinator.Add(ProposeInit(StructureKind::kAs, IssuerKind::kTsa,
                              DocumentItems({"doc0"}), false, kH256, fx.t0, fx.docs, fx.ctx));
  coordinator.Add(ProposeInit(StructureKind::kMts, IssuerKind::kTsa,
                              DocumentItems({"doc1", "doc2"}), false, kH256, fx.t0,
                              fx.docs, fx.ctx));
  EXPECT_EQ(coordinator.size(), 2u);
  EXPECT_EQ(CodeOf([&] {
              coordinator.Add(ProposeInit(StructureKind::kAs, IssuerKind::kTsa,
                                          DocumentItems({"doc3"}), false, kH384,
                                          fx.t0, fx.docs, fx.ctx));
            }),
            Errc::kMixedHashFunctions);
  CountingAttester counter(fx.tsa);
  auto records = coordinator.Attest(counter, fx.t0);
  EXPECT_EQ(counter.count(), 1u);
  EXPECT_EQ(coordinator.size(), 0u);
  for (const EvidenceRecord& r : records) EXPECT_TRUE(fx.Verify(r, AddDays(fx.t0, 1)).valid);
}

TEST(CombineTest, Refusals) {
  Fixture fx;
  EXPECT_EQ(CodeOf([&] { CumulateAttest({}, fx.tsa, fx.t0); }), Errc::kEmptyInput);
  std::vector<Proposal> mixed;
  mixed.push_back(ProposeInit(StructureKind::kAs, IssuerKind::kTsa, DocumentItems({"doc0"}),
                              false, kH256, fx.t0, fx.docs, fx.ctx));
  mixed.push_back(ProposeInit(StructureKind::kAs, IssuerKind::kTsa, DocumentItems({"doc1"}),
                              false, kH384, fx.t0, fx.docs, fx.ctx));
  EXPECT_EQ(CodeOf([&] { CumulateAttest(mixed, fx.tsa, fx.t0); }),
            Errc::kMixedHashFunctions);
  mixed.pop_back();
  EXPECT_EQ(CodeOf([&] { CumulateAttest(mixed, fx.tsa, AddDays(fx.t0, 1)); }),
            Errc::kUsage);
  std::vector<Proposal> naw;
  naw.push_back(ProposeInit(StructureKind::kNaw, IssuerKind::kNa, DocumentItems({"doc0"}),
                            false, kH256, fx.t0, fx.docs, fx.ctx));
  EXPECT_EQ(CodeOf([&] { CumulateAttest(naw, fx.tsa, fx.t0); }), Errc::kIncompatible);
  EXPECT_EQ(CodeOf([&] { CumulateRenew({}, fx.t0, kH256, fx.docs, fx.tsa, fx.ctx); }),
            Errc::kEmptyInput);
}

TEST(CombineTest, AttachDocumentSets) {
  Fixture fx;
  auto first = fx.AddDocs("a", 3);
  auto second = fx.AddDocs("b", 2);
  for (StructureKind kind : {StructureKind::kMds, StructureKind::kSls}) {
    EvidenceRecord r = AttachDocset(std::nullopt, kind, first, fx.t0, kH256, fx.docs,
                                    fx.tsa, fx.ctx);
    r = AttachDocset(r, kind, second, AddDays(fx.t0, 5), kH256, fx.docs, fx.tsa, fx.ctx);
    EXPECT_EQ(DocumentNames(r).size(), 5u);
    EXPECT_EQ(Chain(r).size(), 2u);
    EXPECT_TRUE(fx.Verify(r, AddDays(fx.t0, 6)).valid);
    EXPECT_EQ(CodeOf([&] { AttachDocset(r, kind, first, AddDays(fx.t0, 7), kH256,
                                        fx.docs, fx.tsa, fx.ctx); }),
              Errc::kUsage);
  }
  EvidenceRecord naw = AttachDocset(std::nullopt, StructureKind::kNaw, first, fx.t0, kH256,
                                    fx.docs, fx.na, fx.ctx);
  EXPECT_TRUE(fx.Verify(naw, AddDays(fx.t0, 1)).valid);
  EXPECT_EQ(CodeOf([&] { AttachDocset(naw, StructureKind::kNaw, second, fx.t0, kH256,
                                      fx.docs, fx.na, fx.ctx); }),
            Errc::kIncompatible);
  EXPECT_EQ(CodeOf([&] { AttachDocset(std::nullopt, StructureKind::kAs, first, fx.t0,
                                      kH256, fx.docs, fx.tsa, fx.ctx); }),
            Errc::kUsage);
}

}  // namespace
}  // namespace mops
