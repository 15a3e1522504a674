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
#ifndef MOPS_WORLD_H_
#define MOPS_WORLD_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "mops/crypto.h"
#include "mops/pki.h"
#include "mops/time.h"

namespace mops {

inline constexpr std::string_view kTsaEntity = "TSA";
inline constexpr std::string_view kNaEntity = "NA";

struct WorldConfig {
  std::uint64_t seed = 1;
  TimeInstant epoch = FromDate(2016, 1, 1);
  std::vector<std::string> signers = {"signer"};
};

// A simulated PKI landscape: one three-CA hierarchy per hash function, with
// scheduled key rollovers at every level. Everything is a pure function of
// the config, so separate processes with the same seed see identical
// certificates.
//
//   level          lifetime   new generation every
//   root CA        60 years   30 years
//   intermediate   20 years   10 years
//   issuing CA      6 years    3 years
//   leaf            2 years    2 years - 60 days
class PkiWorld : public VerificationSource {
 public:
  struct Credential {
    KeyPair key;
    Certificate certificate;
  };

  explicit PkiWorld(WorldConfig config = {});
  ~PkiWorld() override;

  const WorldConfig& config() const { return config_; }

  // Newest leaf generation of `entity` in the hash function's PKI at `at`.
  // Entities are kTsaEntity, kNaEntity and the configured signers.
  Credential LeafCredential(std::string_view entity, HashFunctionId hash_fn,
                            TimeInstant at);

  VerificationData Collect(const CertificateRef& leaf, TimeInstant at) override;

  // Throws Error(kUnknownIssuer).
  Certificate FindCertificate(const CertificateRef& ref);

  // Revokes a certificate with its issuing CA. Returns the resulting CRL.
  Crl Revoke(const CertificateRef& ref, TimeInstant at);

 private:
  struct Stream;
  struct Node;

  void AdvanceLocked(TimeInstant at);
  void ProcessLocked(Stream& stream);
  const Node& NodeLocked(const CertificateRef& ref);

  WorldConfig config_;
  std::mutex mu_;
  std::vector<std::unique_ptr<Stream>> streams_;
  std::map<CertificateRef, std::unique_ptr<Node>> nodes_;
};

}  // namespace mops

#endif  // MOPS_WORLD_H_
