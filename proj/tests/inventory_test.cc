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

#include "mops/error.h"
#include "mops/inventory.h"
#include "mops/world.h"

namespace mops {
namespace {

constexpr HashFunctionId kH256 = HashFunctionId::kSha256;
constexpr HashFunctionId kH384 = HashFunctionId::kSha384;
constexpr HashFunctionId kH512 = HashFunctionId::kSha512;

TEST(InventoryTest, LenstraSchedule) {
  SecurityInventory inv = DefaultLenstraInventory();
  EXPECT_TRUE(inv.SecureAt(kH256, FromDate(2037, 12, 31)));
  EXPECT_FALSE(inv.SecureAt(kH256, FromDate(2038, 1, 1)));
  EXPECT_EQ(inv.SecureUntil(kH384), FromDate(2084, 1, 1));
  EXPECT_TRUE(inv.SecureAt(kH512, FromDate(2120, 1, 1)));
  // Key length caps the signature parameters at the paired hash's date.
  EXPECT_EQ(inv.SecureUntil(PairedParams(kH256)), FromDate(2038, 1, 1));
  EXPECT_EQ(inv.SecureUntil(PairedParams(kH384)), FromDate(2084, 1, 1));
  EXPECT_GE(inv.SecureUntil(PairedParams(kH512)), FromDate(kHorizonYear, 1, 1));
}

TEST(InventoryTest, UpdateShortensOnly) {
  SecurityInventory inv = DefaultLenstraInventory();
  const TimeInstant now = FromDate(2025, 1, 1);
  SecurityInventory shorter = inv.UpdateEntry(kH256, FromDate(2030, 1, 1), now);
  EXPECT_EQ(shorter.SecureUntil(kH256), FromDate(2030, 1, 1));
  EXPECT_EQ(shorter.Entry(kH256).last_updated, now);
  EXPECT_EQ(inv.SecureUntil(kH256), FromDate(2038, 1, 1));  // value semantics
  try {
    inv.UpdateEntry(kH256, FromDate(2050, 1, 1), now);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kLifetimeExtension);
  }
}

TEST(InventoryTest, TextRoundTrip) {
  SecurityInventory inv =
      DefaultLenstraInventory().UpdateEntry(kH384, FromDate(2070, 1, 1), FromDate(2030, 1, 1));
  EXPECT_EQ(SecurityInventory::ParseText(inv.ToText()), inv);
  EXPECT_THROW(SecurityInventory::ParseText("SHA-256\tnot-a-date\t2016-01-01\n"), Error);
}

TEST(InventoryTest, PrimitiveNames) {
  EXPECT_EQ(PrimitiveName(Primitive(kH384)), "SHA-384");
  EXPECT_EQ(PrimitiveName(Primitive(PairedParams(kH512))), "SIM-RSA-8192");
  EXPECT_EQ(ParsePrimitive("SIM-RSA-4096"), Primitive(PairedParams(kH384)));
  try {
    DefaultLenstraInventory().Entry(ParsePrimitive("MD5"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnknownPrimitive);
  }
}

TEST(InventoryTest, ValidityEstimateIsEarliestDate) {
  SecurityInventory inv = DefaultLenstraInventory();
  PkiWorld world;
  Certificate tsa2036 = world.LeafCredential("TSA", kH256, FromDate(2036, 6, 1)).certificate;
  // The certificate outlives SHA-256 here; the hash date wins.
  TimeInstant est = ValidityEstimate(inv, kH256, tsa2036);
  EXPECT_EQ(est, std::min(FromDate(2038, 1, 1), tsa2036.not_after));
  Certificate tsa2020 = world.LeafCredential("TSA", kH256, FromDate(2020, 6, 1)).certificate;
  EXPECT_EQ(ValidityEstimate(inv, kH256, tsa2020), tsa2020.not_after);
}

}  // namespace
}  // namespace mops
