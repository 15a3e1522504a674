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
#ifndef MOPS_ERROR_H_
#define MOPS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mops {

enum class Errc {
  kParse = 1,
  kUnsupportedKeyBits,
  kPairingMismatch,
  kUnknownPrimitive,
  kIssuerExpired,
  kUnknownSerial,
  kMissingCrl,
  kUnknownIssuer,
  kLifetimeExtension,
  kEmptyInput,
  kIndexOutOfRange,
  kCertificateExpired,
  kNaCertificateInvalid,
  kNaHashInsecure,
  kNaPriorInvalid,
  kNaOldHashInsecure,
  kNaBadRequest,
  kIncompatible,
  kRenewalWindowMissed,
  kInsecurePrimitive,
  kMixedHashFunctions,
  kInvalidSource,
  kContainerMismatch,
  kUnknownHandle,
  kStorage,
  kMalformedMessage,
  kUnknownEndpoint,
  kTransport,
  kUsage,
};

std::string_view ErrcName(Errc code);

// All library failures are reported as mops::Error; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(ErrcName(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  Errc code() const { return code_; }
  // The message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace mops

#endif  // MOPS_ERROR_H_
