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
#ifndef MOPS_DOCUMENT_H_
#define MOPS_DOCUMENT_H_

#include <map>
#include <string>

#include "mops/bytes.h"
#include "mops/crypto.h"
#include "mops/pki.h"
#include "mops/time.h"

namespace mops {

// Detached signature of the Signing App.
struct DocumentSignature {
  std::string method_id;  // e.g. "SIM-RSA-2048/SHA-256"
  HashValue doc_digest;
  TimeInstant signing_time;
  Certificate signer_cert;
  Bytes signature_value;

  Bytes SignedBytes() const;
  Bytes Encode() const;
  static DocumentSignature Decode(ByteView bytes);

  bool operator==(const DocumentSignature&) const = default;
};

// d = D || s, the unit a proof of existence protects.
struct InputData {
  Bytes document;
  DocumentSignature signature;

  Bytes Encode() const;
  static InputData Decode(ByteView bytes);

  bool operator==(const InputData&) const = default;
};

// Protected documents by name.
using DocumentSet = std::map<std::string, InputData>;

DocumentSignature SignDocument(ByteView document, const KeyPair& key,
                               const Certificate& cert, HashFunctionId hash_fn,
                               TimeInstant at);

// Checks the digest and the signature value; certificate validity at the
// signing time is the notary's concern, not checked here.
bool VerifyDocumentSignature(ByteView document, const DocumentSignature& sig);

}  // namespace mops

#endif  // MOPS_DOCUMENT_H_
