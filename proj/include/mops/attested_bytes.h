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
#ifndef MOPS_ATTESTED_BYTES_H_
#define MOPS_ATTESTED_BYTES_H_

#include <optional>
#include <span>
#include <vector>

#include "mops/attestation.h"
#include "mops/bytes.h"
#include "mops/merkle.h"
#include "mops/pki.h"
#include "mops/record.h"

// The byte strings handed to Attest() by each procedure. "||" is the
// length-prefixed Concat; "name" is the canonical hash function name.
namespace mops::attested {

// name || value                      (AS/MDS/SLS init: value = H(d); MTS: r_0)
Bytes Initial(HashFunctionId h, ByteView value);

// name || H(enc(a) || enc(v))
Bytes AttestationRenewal(HashFunctionId h, const Attestation& a,
                         const VerificationData& v);

// enc(a_0) || enc(v_0) || ... for the first n elements. Throws Error(kParse)
// if a stored verification data is missing.
Bytes ChainPrefix(const std::vector<Element>& chain, std::size_t n);

// name || H(d || a_0 || v_0 || ... || a_{n-1} || v_{n-1})
Bytes AsHashRenewal(HashFunctionId h, ByteView d, ByteView chain_prefix);

// d_i || p_{i,0} || ... || p_{i,k-1}
Bytes MtsLeaf(ByteView content, std::span<const AuthPath> prior_paths);

// name || r_k || H(a_0 || v_0 || ... || a_{n-1} || v_{n-1})
Bytes MtsHashRenewal(HashFunctionId h, ByteView root, ByteView chain_prefix);

// name || H(H(d_n) || a_{n-1} || v_{n-1})
Bytes MdsAdd(HashFunctionId h, ByteView d, const Attestation& a,
             const VerificationData& v);

// d_j || a_j || v_j [|| p_{j,k-1}]; SLS passes its slot digest as d_j.
Bytes SequenceLeaf(ByteView d, const Attestation& a, const VerificationData& v,
                   const AuthPath* previous_path);

// Single document: name || r_k || H(d_n). Batch: name || H(H(r') || r_k).
Bytes MdsHashAdd(HashFunctionId h, ByteView root, ByteView d, bool batch);

// Hash renewal without a new document: name || r_k.
Bytes MdsHashRenewal(HashFunctionId h, ByteView root);

// Skip-list link: H(enc(a_j) || enc(v_j)).
Bytes SlsLink(HashFunctionId h, const Attestation& a, const VerificationData& v);

// SLS element body: H([digest ||] link_0 || ... || link_L).
Bytes SlsBody(HashFunctionId h, const std::optional<Bytes>& digest,
              const std::vector<Bytes>& links);

// name [|| r_k] || body
Bytes SlsElement(HashFunctionId h, const std::optional<Bytes>& root,
                 ByteView body);

// Shared root of cumulated requests: name || root.
Bytes Cumulated(HashFunctionId h, ByteView root);

}  // namespace mops::attested

#endif  // MOPS_ATTESTED_BYTES_H_
