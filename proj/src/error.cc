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
#include "mops/error.h"

namespace mops {

std::string_view ErrcName(Errc code) {
  switch (code) {
    case Errc::kParse: return "parse";
    case Errc::kUnsupportedKeyBits: return "unsupported-key-bits";
    case Errc::kPairingMismatch: return "pairing-mismatch";
    case Errc::kUnknownPrimitive: return "unknown-primitive";
    case Errc::kIssuerExpired: return "issuer-expired";
    case Errc::kUnknownSerial: return "unknown-serial";
    case Errc::kMissingCrl: return "missing-crl";
    case Errc::kUnknownIssuer: return "unknown-issuer";
    case Errc::kLifetimeExtension: return "lifetime-extension";
    case Errc::kEmptyInput: return "empty-input";
    case Errc::kIndexOutOfRange: return "index-out-of-range";
    case Errc::kCertificateExpired: return "certificate-expired";
    case Errc::kNaCertificateInvalid: return "na-certificate-invalid";
    case Errc::kNaHashInsecure: return "na-hash-insecure";
    case Errc::kNaPriorInvalid: return "na-prior-attestation-invalid";
    case Errc::kNaOldHashInsecure: return "na-previous-hash-insecure";
    case Errc::kNaBadRequest: return "na-bad-request";
    case Errc::kIncompatible: return "incompatible";
    case Errc::kRenewalWindowMissed: return "renewal-window-missed";
    case Errc::kInsecurePrimitive: return "insecure-primitive";
    case Errc::kMixedHashFunctions: return "mixed-hash-functions";
    case Errc::kInvalidSource: return "invalid-source";
    case Errc::kContainerMismatch: return "container-mismatch";
    case Errc::kUnknownHandle: return "unknown-handle";
    case Errc::kStorage: return "storage";
    case Errc::kMalformedMessage: return "malformed-message";
    case Errc::kUnknownEndpoint: return "unknown-endpoint";
    case Errc::kTransport: return "transport";
    case Errc::kUsage: return "usage";
  }
  return "unknown";
}

}  // namespace mops
