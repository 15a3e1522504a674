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
#ifndef MOPS_CRYPTO_H_
#define MOPS_CRYPTO_H_

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "mops/bytes.h"

namespace mops {

enum class HashFunctionId : std::uint8_t { kSha256 = 0, kSha384 = 1, kSha512 = 2 };

inline constexpr std::array<HashFunctionId, 3> kAllHashFunctions = {
    HashFunctionId::kSha256, HashFunctionId::kSha384, HashFunctionId::kSha512};

// "SHA-256", "SHA-384", "SHA-512".
std::string_view HashName(HashFunctionId id);
// Throws Error(kUnknownPrimitive).
HashFunctionId ParseHashName(std::string_view name);
std::size_t DigestSize(HashFunctionId id);
Bytes Hash(HashFunctionId id, ByteView data);

struct HashValue {
  HashFunctionId hash_fn = HashFunctionId::kSha256;
  Bytes value;

  bool operator==(const HashValue&) const = default;
};

enum class SignatureScheme : std::uint8_t { kSimRsa = 0 };

struct SignatureParams {
  SignatureScheme scheme = SignatureScheme::kSimRsa;
  std::uint32_t key_bits = 2048;

  auto operator<=>(const SignatureParams&) const = default;
};

// "SIM-RSA-2048" etc.
std::string SignatureParamsName(const SignatureParams& params);
SignatureParams ParseSignatureParams(std::string_view name);

// Fixed strength pairing: SHA-256/2048, SHA-384/4096, SHA-512/8192.
SignatureParams PairedParams(HashFunctionId id);
HashFunctionId PairedHash(const SignatureParams& params);

struct KeyPair {
  SignatureParams params;
  Bytes public_key;
  Bytes private_key;
  // First 8 bytes of SHA-256(public_key), hex.
  std::string key_id;
};

// Deterministic in (params, seed). Throws Error(kUnsupportedKeyBits).
KeyPair GenerateKeyPair(const SignatureParams& params, std::uint64_t seed);

// Throws Error(kPairingMismatch) if the hash is not the one paired with the
// key size.
Bytes Sign(const KeyPair& key, HashFunctionId hash_fn, ByteView message);

// Never throws; malformed keys or signatures verify as false.
bool Verify(ByteView public_key, HashFunctionId hash_fn, ByteView message,
            ByteView signature);

// Number of Verify() calls answered from the positive-result cache.
std::uint64_t SignatureCacheHits();

}  // namespace mops

#endif  // MOPS_CRYPTO_H_
