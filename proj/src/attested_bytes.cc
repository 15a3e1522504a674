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
#include "mops/attested_bytes.h"

#include "mops/error.h"

namespace mops::attested {

Bytes Initial(HashFunctionId h, ByteView value) {
  return Concat({ToBytes(HashName(h)), value});
}

Bytes AttestationRenewal(HashFunctionId h, const Attestation& a,
                         const VerificationData& v) {
  return Initial(h, Hash(h, Concat({a.Encode(), v.Encode()})));
}

Bytes ChainPrefix(const std::vector<Element>& chain, std::size_t n) {
  Encoder e;
  for (std::size_t i = 0; i < n; ++i) {
    if (!chain[i].verification.has_value()) {
      throw Error(Errc::kParse,
                  "element " + std::to_string(i) + " lacks verification data");
    }
    e.Field(chain[i].attestation.Encode()).Field(chain[i].verification->Encode());
  }
  return e.Take();
}

Bytes AsHashRenewal(HashFunctionId h, ByteView d, ByteView chain_prefix) {
  Encoder e;
  e.Field(d).Raw(chain_prefix);
  return Initial(h, Hash(h, e.bytes()));
}

Bytes MtsLeaf(ByteView content, std::span<const AuthPath> prior_paths) {
  Encoder e;
  e.Field(content);
  for (const AuthPath& p : prior_paths) e.Field(p.Encode());
  return e.Take();
}

Bytes MtsHashRenewal(HashFunctionId h, ByteView root, ByteView chain_prefix) {
  return Concat({ToBytes(HashName(h)), root, Hash(h, chain_prefix)});
}

Bytes MdsAdd(HashFunctionId h, ByteView d, const Attestation& a,
             const VerificationData& v) {
  return Initial(h, Hash(h, Concat({Hash(h, d), a.Encode(), v.Encode()})));
}

Bytes SequenceLeaf(ByteView d, const Attestation& a, const VerificationData& v,
                   const AuthPath* previous_path) {
  Encoder e;
  e.Field(d).Field(a.Encode()).Field(v.Encode());
  if (previous_path != nullptr) e.Field(previous_path->Encode());
  return e.Take();
}

Bytes MdsHashAdd(HashFunctionId h, ByteView root, ByteView d, bool batch) {
  if (batch) return Initial(h, Hash(h, Concat({Hash(h, d), root})));
  return Concat({ToBytes(HashName(h)), root, Hash(h, d)});
}

Bytes MdsHashRenewal(HashFunctionId h, ByteView root) { return Initial(h, root); }

Bytes SlsLink(HashFunctionId h, const Attestation& a, const VerificationData& v) {
  return Hash(h, Concat({a.Encode(), v.Encode()}));
}

Bytes SlsBody(HashFunctionId h, const std::optional<Bytes>& digest,
              const std::vector<Bytes>& links) {
  Encoder e;
  if (digest.has_value()) e.Field(*digest);
  for (const Bytes& l : links) e.Field(l);
  return Hash(h, e.bytes());
}

Bytes SlsElement(HashFunctionId h, const std::optional<Bytes>& root,
                 ByteView body) {
  if (root.has_value()) return Concat({ToBytes(HashName(h)), *root, body});
  return Initial(h, body);
}

Bytes Cumulated(HashFunctionId h, ByteView root) { return Initial(h, root); }

}  // namespace mops::attested
