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
#include "mops/crypto.h"

#include <openssl/evp.h>
#include <sodium.h>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <string>
#include <unordered_set>

#include "mops/error.h"

namespace mops {

namespace {

constexpr std::string_view kKeygenLabel = "mops/sim-rsa/keygen";
constexpr std::string_view kPublicPadLabel = "mops/sim-rsa/public-pad";
constexpr std::string_view kSignaturePadLabel = "mops/sim-rsa/signature-pad";
constexpr std::string_view kMessageLabel = "mops/sim-rsa/message";

// Public key layout: key_bits (2 bytes BE) || Ed25519 public key || pad.
constexpr std::size_t kPublicHeader = 2 + crypto_sign_PUBLICKEYBYTES;

const EVP_MD* Md(HashFunctionId id) {
  switch (id) {
    case HashFunctionId::kSha256: return EVP_sha256();
    case HashFunctionId::kSha384: return EVP_sha384();
    case HashFunctionId::kSha512: return EVP_sha512();
  }
  throw Error(Errc::kUnknownPrimitive, "hash function id");
}

void EnsureSodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw Error(Errc::kUnknownPrimitive, "libsodium failed to start");
}

bool SupportedBits(std::uint32_t bits) {
  return bits == 2048 || bits == 4096 || bits == 8192;
}

// SHA-512 in counter mode, used to inflate Ed25519 material to modulus size.
Bytes Expand(std::string_view label, ByteView seed, std::size_t length) {
  Bytes out;
  out.reserve(length + 64);
  for (std::uint64_t counter = 0; out.size() < length; ++counter) {
    Encoder e;
    e.Field(label).Field(seed).U64(counter);
    Bytes block = Hash(HashFunctionId::kSha512, e.bytes());
    out.insert(out.end(), block.begin(), block.end());
  }
  out.resize(length);
  return out;
}

Bytes SigningInput(std::uint32_t key_bits, HashFunctionId hash_fn,
                   ByteView message) {
  Encoder e;
  e.Field(kMessageLabel)
      .IntField(key_bits)
      .Field(HashName(hash_fn))
      .Field(Hash(hash_fn, message));
  return e.Take();
}

class SignatureCache {
 public:
  bool Contains(const Bytes& key) {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.count(ToString(key)) != 0;
  }
  void Insert(const Bytes& key) {
    std::lock_guard<std::mutex> lock(mu_);
    if (entries_.size() > kMaxEntries) entries_.clear();
    entries_.insert(ToString(key));
  }
  std::atomic<std::uint64_t> hits{0};

 private:
  static constexpr std::size_t kMaxEntries = 1 << 20;
  std::mutex mu_;
  std::unordered_set<std::string> entries_;
};

SignatureCache& Cache() {
  static SignatureCache* cache = new SignatureCache();
  return *cache;
}

}  // namespace

std::string_view HashName(HashFunctionId id) {
  switch (id) {
    case HashFunctionId::kSha256: return "SHA-256";
    case HashFunctionId::kSha384: return "SHA-384";
    case HashFunctionId::kSha512: return "SHA-512";
  }
  throw Error(Errc::kUnknownPrimitive, "hash function id");
}

HashFunctionId ParseHashName(std::string_view name) {
  for (HashFunctionId id : kAllHashFunctions) {
    if (HashName(id) == name) return id;
  }
  throw Error(Errc::kUnknownPrimitive, "unknown hash function '" +
                                           std::string(name) + "'");
}

std::size_t DigestSize(HashFunctionId id) {
  return static_cast<std::size_t>(EVP_MD_size(Md(id)));
}

Bytes Hash(HashFunctionId id, ByteView data) {
  Bytes out(EVP_MAX_MD_SIZE);
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, Md(id),
                 nullptr) != 1) {
    throw Error(Errc::kUnknownPrimitive, "digest computation failed");
  }
  out.resize(len);
  return out;
}

std::string SignatureParamsName(const SignatureParams& params) {
  return "SIM-RSA-" + std::to_string(params.key_bits);
}

SignatureParams ParseSignatureParams(std::string_view name) {
  constexpr std::string_view kPrefix = "SIM-RSA-";
  if (name.substr(0, kPrefix.size()) == kPrefix) {
    std::string_view bits = name.substr(kPrefix.size());
    for (std::uint32_t b : {2048u, 4096u, 8192u}) {
      if (bits == std::to_string(b)) return {SignatureScheme::kSimRsa, b};
    }
  }
  throw Error(Errc::kUnknownPrimitive,
              "unknown signature parameters '" + std::string(name) + "'");
}

SignatureParams PairedParams(HashFunctionId id) {
  switch (id) {
    case HashFunctionId::kSha256: return {SignatureScheme::kSimRsa, 2048};
    case HashFunctionId::kSha384: return {SignatureScheme::kSimRsa, 4096};
    case HashFunctionId::kSha512: return {SignatureScheme::kSimRsa, 8192};
  }
  throw Error(Errc::kUnknownPrimitive, "hash function id");
}

HashFunctionId PairedHash(const SignatureParams& params) {
  switch (params.key_bits) {
    case 2048: return HashFunctionId::kSha256;
    case 4096: return HashFunctionId::kSha384;
    case 8192: return HashFunctionId::kSha512;
  }
  throw Error(Errc::kUnsupportedKeyBits,
              "key size " + std::to_string(params.key_bits));
}

KeyPair GenerateKeyPair(const SignatureParams& params, std::uint64_t seed) {
  if (!SupportedBits(params.key_bits)) {
    throw Error(Errc::kUnsupportedKeyBits,
                "key size " + std::to_string(params.key_bits));
  }
  EnsureSodium();
  Encoder e;
  e.Field(kKeygenLabel).IntField(params.key_bits).U64(seed);
  Bytes ed_seed = Hash(HashFunctionId::kSha256, e.bytes());

  unsigned char pk[crypto_sign_PUBLICKEYBYTES];
  unsigned char sk[crypto_sign_SECRETKEYBYTES];
  crypto_sign_seed_keypair(pk, sk, ed_seed.data());

  KeyPair key;
  key.params = params;
  key.public_key.resize(2 + sizeof(pk));
  key.public_key[0] = static_cast<std::uint8_t>(params.key_bits >> 8);
  key.public_key[1] = static_cast<std::uint8_t>(params.key_bits & 0xff);
  std::copy(pk, pk + sizeof(pk), key.public_key.begin() + 2);
  Bytes pad = Expand(kPublicPadLabel, ByteView(pk, sizeof(pk)),
                     params.key_bits / 8 - kPublicHeader);
  key.public_key.insert(key.public_key.end(), pad.begin(), pad.end());
  key.private_key.assign(sk, sk + sizeof(sk));
  key.key_id = HexEncode(
      ByteView(Hash(HashFunctionId::kSha256, key.public_key)).first(8));
  sodium_memzero(sk, sizeof(sk));
  return key;
}

Bytes Sign(const KeyPair& key, HashFunctionId hash_fn, ByteView message) {
  if (PairedParams(hash_fn) != key.params) {
    throw Error(Errc::kPairingMismatch,
                std::string(HashName(hash_fn)) + " with " +
                    SignatureParamsName(key.params));
  }
  if (key.private_key.size() != crypto_sign_SECRETKEYBYTES) {
    throw Error(Errc::kUnsupportedKeyBits, "malformed private key");
  }
  EnsureSodium();
  Bytes input = SigningInput(key.params.key_bits, hash_fn, message);
  unsigned char sig[crypto_sign_BYTES];
  crypto_sign_detached(sig, nullptr, input.data(), input.size(),
                       key.private_key.data());
  Bytes out(sig, sig + sizeof(sig));
  Bytes pad = Expand(kSignaturePadLabel, out,
                     key.params.key_bits / 8 - crypto_sign_BYTES);
  out.insert(out.end(), pad.begin(), pad.end());
  return out;
}

bool Verify(ByteView public_key, HashFunctionId hash_fn, ByteView message,
            ByteView signature) {
  if (public_key.size() < kPublicHeader) return false;
  std::uint32_t bits = static_cast<std::uint32_t>(public_key[0]) << 8 |
                       public_key[1];
  if (!SupportedBits(bits)) return false;
  if (PairedParams(hash_fn).key_bits != bits) return false;
  if (public_key.size() != bits / 8 || signature.size() != bits / 8) {
    return false;
  }

  Encoder cache_key;
  cache_key.Field(public_key)
      .Field(HashName(hash_fn))
      .Field(Hash(HashFunctionId::kSha256, message))
      .Field(signature);
  Bytes cache_id = Hash(HashFunctionId::kSha256, cache_key.bytes());
  if (Cache().Contains(cache_id)) {
    ++Cache().hits;
    return true;
  }

  EnsureSodium();
  ByteView ed_pk = public_key.subspan(2, crypto_sign_PUBLICKEYBYTES);
  Bytes expected_pad =
      Expand(kPublicPadLabel, ed_pk, bits / 8 - kPublicHeader);
  if (!std::equal(expected_pad.begin(), expected_pad.end(),
                  public_key.begin() + kPublicHeader)) {
    return false;
  }
  ByteView ed_sig = signature.subspan(0, crypto_sign_BYTES);
  Bytes expected_sig_pad =
      Expand(kSignaturePadLabel, ed_sig, bits / 8 - crypto_sign_BYTES);
  if (!std::equal(expected_sig_pad.begin(), expected_sig_pad.end(),
                  signature.begin() + crypto_sign_BYTES)) {
    return false;
  }
  Bytes input = SigningInput(bits, hash_fn, message);
  if (crypto_sign_verify_detached(ed_sig.data(), input.data(), input.size(),
                                  ed_pk.data()) != 0) {
    return false;
  }
  Cache().Insert(cache_id);
  return true;
}

std::uint64_t SignatureCacheHits() { return Cache().hits.load(); }

}  // namespace mops
