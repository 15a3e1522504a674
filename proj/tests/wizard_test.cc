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

#include "mops/error.h"
#include "mops/wizard.h"

namespace mops {
namespace {

Errc CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kUsage;
}

SchemeConfig Select(const char* r, const char* s, const char* t) {
  return WizardSelect({ParseRetrieval(r), ParseStorage(s), ParseTrust(t)});
}

TEST(WizardTest, DocumentedExamples) {
  EXPECT_EQ(Select("all", "sets", "minimal").structure, StructureKind::kMts);
  SchemeConfig naw = Select("single", "few", "accepts-na");
  EXPECT_EQ(naw.structure, StructureKind::kNaw);
  EXPECT_EQ(naw.attester, IssuerKind::kNa);
  EXPECT_EQ(Select("single", "sequential", "minimal").structure, StructureKind::kSls);
  EXPECT_EQ(DescribeScheme(Select("all", "sets", "minimal")),
            "structure=MTS attester=TSA cumulate=0 batch=0 hash=SHA-256 "
            "threshold-days=30");
}

TEST(WizardTest, EveryAnswerGivesAValidScheme) {
  for (Retrieval r : kAllRetrievals) {
    for (Storage s : kAllStorages) {
      for (Trust t : kAllTrusts) {
        SchemeConfig c = WizardSelect({r, s, t});
        EXPECT_NO_THROW(ValidateScheme(c));
        if (t == Trust::kMinimal) EXPECT_EQ(c.attester, IssuerKind::kTsa);
        if (c.structure == StructureKind::kNaw) EXPECT_EQ(c.attester, IssuerKind::kNa);
        EXPECT_EQ(ParseRetrieval(RetrievalName(r)), r);
        EXPECT_EQ(ParseStorage(StorageName(s)), s);
        EXPECT_EQ(ParseTrust(TrustName(t)), t);
      }
    }
  }
}

TEST(WizardTest, ParseErrors) {
  EXPECT_EQ(CodeOf([] { ParseRetrieval("some"); }), Errc::kUsage);
  EXPECT_EQ(CodeOf([] { ParseStorage(""); }), Errc::kUsage);
  EXPECT_EQ(CodeOf([] { ParseTrust("Minimal"); }), Errc::kUsage);
}

TEST(WizardTest, ValidateSchemeRejections) {
  SchemeConfig c;
  c.structure = StructureKind::kNaw;
  EXPECT_EQ(CodeOf([&] { ValidateScheme(c); }), Errc::kIncompatible);
  c = {};
  c.structure = StructureKind::kMds;
  c.cumulate = true;
  EXPECT_EQ(CodeOf([&] { ValidateScheme(c); }), Errc::kIncompatible);
  c = {};
  c.structure = StructureKind::kMts;
  c.batch = true;
  EXPECT_EQ(CodeOf([&] { ValidateScheme(c); }), Errc::kIncompatible);
  c = {};
  c.renewal_threshold_days = -1;
  EXPECT_EQ(CodeOf([&] { ValidateScheme(c); }), Errc::kUsage);
  c = {};
  c.endpoint = "127.0.0.1:9000";
  EXPECT_NE(DescribeScheme(c).find(" endpoint=127.0.0.1:9000"), std::string::npos);
}

}  // namespace
}  // namespace mops
