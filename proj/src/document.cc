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
#include "mops/document.h"

#include "mops/error.h"

namespace mops {

Bytes DocumentSignature::SignedBytes() const {
  Encoder e;
  e.Field(method_id)
      .Field(HashName(doc_digest.hash_fn))
      .Field(doc_digest.value)
      .IntField(signing_time.seconds)
      .Field(signer_cert.Encode());
  return e.Take();
}

Bytes DocumentSignature::Encode() const {
  Encoder e;
  e.Raw(SignedBytes()).Field(signature_value);
  return e.Take();
}

DocumentSignature DocumentSignature::Decode(ByteView bytes) {
  Decoder d(bytes);
  DocumentSignature s;
  s.method_id = d.Text();
  s.doc_digest.hash_fn = ParseHashName(d.Text());
  s.doc_digest.value = d.Field();
  s.signing_time.seconds = d.IntField();
  s.signer_cert = Certificate::Decode(d.Field());
  s.signature_value = d.Field();
  d.Finish();
  return s;
}

Bytes InputData::Encode() const {
  return Concat({document, signature.Encode()});
}

InputData InputData::Decode(ByteView bytes) {
  Decoder d(bytes);
  InputData in;
  in.document = d.Field();
  in.signature = DocumentSignature::Decode(d.Field());
  d.Finish();
  return in;
}

DocumentSignature SignDocument(ByteView document, const KeyPair& key,
                               const Certificate& cert, HashFunctionId hash_fn,
                               TimeInstant at) {
  DocumentSignature s;
  s.method_id = SignatureParamsName(key.params) + "/" + std::string(HashName(hash_fn));
  s.doc_digest = {hash_fn, Hash(hash_fn, document)};
  s.signing_time = at;
  s.signer_cert = cert;
  s.signature_value = Sign(key, hash_fn, s.SignedBytes());
  return s;
}

bool VerifyDocumentSignature(ByteView document, const DocumentSignature& sig) {
  if (Hash(sig.doc_digest.hash_fn, document) != sig.doc_digest.value) {
    return false;
  }
  return Verify(sig.signer_cert.public_key, sig.doc_digest.hash_fn,
                sig.SignedBytes(), sig.signature_value);
}

}  // namespace mops
