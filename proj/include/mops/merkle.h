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
#ifndef MOPS_MERKLE_H_
#define MOPS_MERKLE_H_

#include <cstdint>
#include <vector>

#include "mops/bytes.h"
#include "mops/crypto.h"

namespace mops {

enum class Side : std::uint8_t { kLeft = 0, kRight = 1 };

struct Sibling {
  Bytes digest;
  Side side = Side::kLeft;  // position of the sibling relative to the path

  bool operator==(const Sibling&) const = default;
};

struct AuthPath {
  std::uint64_t leaf_index = 0;
  std::vector<Sibling> siblings;
  HashFunctionId hash_fn = HashFunctionId::kSha256;

  Bytes Encode() const;
  // The hash function is not part of the encoding; it comes from context.
  static AuthPath Decode(ByteView bytes, HashFunctionId hash_fn);

  bool operator==(const AuthPath&) const = default;
};

// Leaf digest is H(payload); an inner node is H(left || right) with
// length-prefixed concatenation; an unpaired node moves up unhashed.
class MerkleTree {
 public:
  // Throws Error(kEmptyInput).
  MerkleTree(HashFunctionId hash_fn, const std::vector<Bytes>& leaves);

  HashFunctionId hash_fn() const { return hash_fn_; }
  const Bytes& root() const { return levels_.back().front(); }
  std::size_t leaf_count() const { return levels_.front().size(); }
  // Throws Error(kIndexOutOfRange).
  AuthPath PathFor(std::size_t index) const;

 private:
  HashFunctionId hash_fn_;
  std::vector<std::vector<Bytes>> levels_;
};

Bytes NodeHash(HashFunctionId hash_fn, ByteView left, ByteView right);
// Root of the tree whose leaf nodes (already hashed) are given.
Bytes RootFromLeafHashes(HashFunctionId hash_fn, std::vector<Bytes> level);
Bytes RecomputeRoot(ByteView leaf_payload, const AuthPath& path);

// True if the sibling sides are exactly those of leaf_index in a tree of
// leaf_count leaves (odd nodes promoted), and every digest has the right size.
bool PathShapeValid(const AuthPath& path, std::uint64_t leaf_count);
// Same without a known leaf count: checks that leaf_index is consistent with
// the sides under some tree size.
bool PathShapeConsistent(const AuthPath& path);

}  // namespace mops

#endif  // MOPS_MERKLE_H_
