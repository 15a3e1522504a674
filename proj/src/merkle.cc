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
#include "mops/merkle.h"

#include "mops/error.h"

namespace mops {

Bytes AuthPath::Encode() const {
  Encoder e;
  e.U64(leaf_index).U64(siblings.size());
  for (const Sibling& s : siblings) {
    e.U8(static_cast<std::uint8_t>(s.side)).Field(s.digest);
  }
  return e.Take();
}

AuthPath AuthPath::Decode(ByteView bytes, HashFunctionId hash_fn) {
  Decoder d(bytes);
  AuthPath path;
  path.hash_fn = hash_fn;
  path.leaf_index = d.U64();
  std::uint64_t count = d.U64();
  if (count > 64) throw Error(Errc::kParse, "authentication path too long");
  const std::size_t digest_size = DigestSize(hash_fn);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint8_t side = d.U8();
    if (side > 1) throw Error(Errc::kParse, "bad sibling side");
    Bytes digest = d.Field();
    if (digest.size() != digest_size) {
      throw Error(Errc::kParse, "sibling digest size");
    }
    path.siblings.push_back({std::move(digest), static_cast<Side>(side)});
  }
  d.Finish();
  return path;
}

Bytes NodeHash(HashFunctionId hash_fn, ByteView left, ByteView right) {
  return Hash(hash_fn, Concat({left, right}));
}

Bytes RootFromLeafHashes(HashFunctionId hash_fn, std::vector<Bytes> level) {
  if (level.empty()) throw Error(Errc::kEmptyInput, "Merkle tree without leaves");
  while (level.size() > 1) {
    std::vector<Bytes> above;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      above.push_back(NodeHash(hash_fn, level[i], level[i + 1]));
    }
    if (level.size() % 2 == 1) above.push_back(std::move(level.back()));
    level = std::move(above);
  }
  return std::move(level.front());
}

MerkleTree::MerkleTree(HashFunctionId hash_fn, const std::vector<Bytes>& leaves)
    : hash_fn_(hash_fn) {
  if (leaves.empty()) throw Error(Errc::kEmptyInput, "Merkle tree without leaves");
  std::vector<Bytes> level;
  level.reserve(leaves.size());
  for (const Bytes& leaf : leaves) level.push_back(Hash(hash_fn, leaf));
  levels_.push_back(std::move(level));
  while (levels_.back().size() > 1) {
    const std::vector<Bytes>& below = levels_.back();
    std::vector<Bytes> above;
    above.reserve((below.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < below.size(); i += 2) {
      above.push_back(NodeHash(hash_fn, below[i], below[i + 1]));
    }
    if (below.size() % 2 == 1) above.push_back(below.back());
    levels_.push_back(std::move(above));
  }
}

AuthPath MerkleTree::PathFor(std::size_t index) const {
  if (index >= leaf_count()) {
    throw Error(Errc::kIndexOutOfRange, "leaf " + std::to_string(index));
  }
  AuthPath path;
  path.leaf_index = index;
  path.hash_fn = hash_fn_;
  std::size_t pos = index;
  for (std::size_t l = 0; l + 1 < levels_.size(); ++l) {
    const std::vector<Bytes>& level = levels_[l];
    if (pos % 2 == 1) {
      path.siblings.push_back({level[pos - 1], Side::kLeft});
    } else if (pos + 1 < level.size()) {
      path.siblings.push_back({level[pos + 1], Side::kRight});
    }
    pos /= 2;
  }
  return path;
}

Bytes RecomputeRoot(ByteView leaf_payload, const AuthPath& path) {
  Bytes node = Hash(path.hash_fn, leaf_payload);
  for (const Sibling& s : path.siblings) {
    node = s.side == Side::kLeft ? NodeHash(path.hash_fn, s.digest, node)
                                 : NodeHash(path.hash_fn, node, s.digest);
  }
  return node;
}

namespace {

bool DigestSizesValid(const AuthPath& path) {
  const std::size_t size = DigestSize(path.hash_fn);
  for (const Sibling& s : path.siblings) {
    if (s.digest.size() != size) return false;
  }
  return true;
}

}  // namespace

bool PathShapeValid(const AuthPath& path, std::uint64_t leaf_count) {
  if (path.leaf_index >= leaf_count || !DigestSizesValid(path)) return false;
  std::uint64_t pos = path.leaf_index;
  std::size_t next = 0;
  for (std::uint64_t n = leaf_count; n > 1; n = (n + 1) / 2, pos /= 2) {
    Side expected;
    if (pos % 2 == 1) {
      expected = Side::kLeft;
    } else if (pos + 1 < n) {
      expected = Side::kRight;
    } else {
      continue;  // promoted
    }
    if (next >= path.siblings.size() || path.siblings[next].side != expected) {
      return false;
    }
    ++next;
  }
  return next == path.siblings.size();
}

bool PathShapeConsistent(const AuthPath& path) {
  if (!DigestSizesValid(path) || path.siblings.size() > 64) return false;
  std::uint64_t pos = path.leaf_index;
  bool promoted = false;  // once promoted, the node stays last in its level
  for (const Sibling& s : path.siblings) {
    while (true) {
      if (pos % 2 == 1) {
        if (s.side != Side::kLeft) return false;
        break;
      }
      if (s.side == Side::kRight && !promoted) break;
      if (pos == 0) return false;
      promoted = true;
      pos /= 2;
    }
    pos /= 2;
  }
  return pos == 0;
}

}  // namespace mops
