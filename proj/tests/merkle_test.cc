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

#include <random>

#include "mops/error.h"
#include "mops/merkle.h"

namespace mops {
namespace {

constexpr HashFunctionId kH256 = HashFunctionId::kSha256;

std::vector<Bytes> Leaves(std::size_t n) {
  std::vector<Bytes> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(ToBytes("leaf " + std::to_string(i)));
  return out;
}

TEST(MerkleTest, SmallTreesByHand) {
  auto l = Leaves(3);
  Bytes h0 = Hash(kH256, l[0]), h1 = Hash(kH256, l[1]), h2 = Hash(kH256, l[2]);
  EXPECT_EQ(MerkleTree(kH256, {l[0]}).root(), h0);
  EXPECT_EQ(MerkleTree(kH256, {l[0], l[1]}).root(), Hash(kH256, Concat({h0, h1})));
  // The unpaired third node moves up unchanged.
  EXPECT_EQ(MerkleTree(kH256, l).root(),
            Hash(kH256, Concat({Hash(kH256, Concat({h0, h1})), h2})));
  EXPECT_EQ(RootFromLeafHashes(kH256, {h0, h1, h2}), MerkleTree(kH256, l).root());
}

TEST(MerkleTest, EveryPathRecomputesTheRoot) {
  for (HashFunctionId h : kAllHashFunctions) {
    for (std::size_t n = 1; n <= 17; ++n) {
      auto leaves = Leaves(n);
      MerkleTree tree(h, leaves);
      EXPECT_EQ(tree.leaf_count(), n);
      for (std::size_t i = 0; i < n; ++i) {
        AuthPath p = tree.PathFor(i);
        EXPECT_EQ(RecomputeRoot(leaves[i], p), tree.root());
        EXPECT_TRUE(PathShapeValid(p, n));
        EXPECT_TRUE(PathShapeConsistent(p));
        EXPECT_EQ(AuthPath::Decode(p.Encode(), h), p);
      }
    }
  }
}

TEST(MerkleTest, ShapeCheckRejectsWrongIndexOrCount) {
  MerkleTree tree(kH256, Leaves(5));
  AuthPath p = tree.PathFor(4);
  EXPECT_TRUE(PathShapeValid(p, 5));
  EXPECT_FALSE(PathShapeValid(p, 8));
  AuthPath moved = p;
  moved.leaf_index = 3;
  EXPECT_FALSE(PathShapeValid(moved, 5));
  AuthPath flipped = tree.PathFor(1);
  flipped.siblings[0].side =
      flipped.siblings[0].side == Side::kLeft ? Side::kRight : Side::kLeft;
  EXPECT_FALSE(PathShapeValid(flipped, 5));
  AuthPath short_digest = tree.PathFor(0);
  short_digest.siblings[0].digest.pop_back();
  EXPECT_FALSE(PathShapeValid(short_digest, 5));
}

TEST(MerkleTest, EverySingleBitFlipChangesTheRoot) {
  auto leaves = Leaves(4);
  MerkleTree tree(kH256, leaves);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    AuthPath p = tree.PathFor(i);
    for (std::size_t bit = 0; bit < leaves[i].size() * 8; ++bit) {
      Bytes bad = leaves[i];
      bad[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      EXPECT_NE(RecomputeRoot(bad, p), tree.root());
    }
    for (std::size_t s = 0; s < p.siblings.size(); ++s) {
      for (std::size_t bit = 0; bit < p.siblings[s].digest.size() * 8; ++bit) {
        AuthPath bad = p;
        bad.siblings[s].digest[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        EXPECT_NE(RecomputeRoot(leaves[i], bad), tree.root());
      }
    }
  }
}

TEST(MerkleTest, RandomTrees) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    std::size_t n = rng() % 40 + 1;
    std::vector<Bytes> leaves;
    for (std::size_t i = 0; i < n; ++i) {
      Bytes b(rng() % 50);
      for (auto& x : b) x = static_cast<std::uint8_t>(rng());
      leaves.push_back(b);
    }
    MerkleTree tree(kH256, leaves);
    std::size_t i = rng() % n;
    EXPECT_EQ(RecomputeRoot(leaves[i], tree.PathFor(i)), tree.root());
  }
}

TEST(MerkleTest, Errors) {
  try {
    MerkleTree(kH256, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEmptyInput);
  }
  try {
    MerkleTree(kH256, Leaves(3)).PathFor(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIndexOutOfRange);
  }
  EXPECT_THROW(AuthPath::Decode(Bytes{1, 2, 3}, kH256), Error);
}

}  // namespace
}  // namespace mops
