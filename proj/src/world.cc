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
#include "mops/world.h"

#include <algorithm>
#include <tuple>

#include "mops/error.h"

namespace mops {

namespace {

constexpr int kRootLevel = 0;
constexpr int kLeafLevel = 3;
constexpr int kCaPeriodYears[] = {30, 10, 3};
constexpr Lifetime kLifetimes[] = {{60, 0}, {20, 0}, {6, 0}, {2, 0}};
constexpr const char* kCaNames[] = {"Root CA", "Intermediate CA", "Issuing CA"};

std::uint64_t DeriveSeed(std::uint64_t world_seed, HashFunctionId h, int level,
                         std::string_view entity, int generation) {
  Encoder e;
  e.Field("mops/world/key").U64(world_seed).Field(HashName(h)).U64(level)
      .Field(entity).U64(static_cast<std::uint64_t>(generation));
  Bytes digest = Hash(HashFunctionId::kSha256, e.bytes());
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = seed << 8 | digest[i];
  return seed;
}

}  // namespace

struct PkiWorld::Stream {
  HashFunctionId hash_fn;
  int level;
  std::string entity;  // empty for CA levels
  int entity_index;
  int next_generation = 0;
  TimeInstant next_time;
  // Issued generations in order: (issued at, certificate reference).
  std::vector<std::pair<TimeInstant, CertificateRef>> generations;
};

struct PkiWorld::Node {
  Certificate certificate;
  std::unique_ptr<CertificateAuthority> ca;
  std::optional<KeyPair> key;
};

PkiWorld::PkiWorld(WorldConfig config) : config_(std::move(config)) {
  std::vector<std::string> leaves = {std::string(kTsaEntity),
                                     std::string(kNaEntity)};
  for (const std::string& s : config_.signers) {
    if (std::find(leaves.begin(), leaves.end(), s) != leaves.end()) {
      throw Error(Errc::kUsage, "duplicate PKI entity '" + s + "'");
    }
    leaves.push_back(s);
  }
  for (HashFunctionId h : kAllHashFunctions) {
    for (int level = kRootLevel; level < kLeafLevel; ++level) {
      auto s = std::make_unique<Stream>();
      s->hash_fn = h;
      s->level = level;
      s->entity_index = 0;
      s->next_time = config_.epoch;
      streams_.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      auto s = std::make_unique<Stream>();
      s->hash_fn = h;
      s->level = kLeafLevel;
      s->entity = leaves[i];
      s->entity_index = static_cast<int>(i);
      s->next_time = config_.epoch;
      streams_.push_back(std::move(s));
    }
  }
}

PkiWorld::~PkiWorld() = default;

void PkiWorld::ProcessLocked(Stream& s) {
  const int g = s.next_generation;
  const TimeInstant t = s.next_time;
  const SignatureParams params = PairedParams(s.hash_fn);
  const std::string hash_name(HashName(s.hash_fn));
  auto node = std::make_unique<Node>();

  std::uint64_t seed = DeriveSeed(config_.seed, s.hash_fn, s.level, s.entity, g);
  std::string subject =
      (s.level < kLeafLevel ? std::string(kCaNames[s.level]) : s.entity) + " " +
      hash_name + " G" + std::to_string(g);

  if (s.level == kRootLevel) {
    node->ca = CertificateAuthority::CreateRoot(subject, params, seed, t,
                                                kLifetimes[kRootLevel]);
    node->certificate = node->ca->certificate();
  } else {
    // The parent is the newest generation one level up at time t.
    const Stream* parent = nullptr;
    for (const auto& other : streams_) {
      if (other->hash_fn == s.hash_fn && other->level == s.level - 1 &&
          other->entity.empty()) {
        parent = other.get();
      }
    }
    const CertificateRef* parent_ref = nullptr;
    for (const auto& [when, ref] : parent->generations) {
      if (when <= t) parent_ref = &ref;
    }
    CertificateAuthority& issuer = *nodes_.at(*parent_ref)->ca;
    KeyPair key = GenerateKeyPair(params, seed);
    node->certificate = issuer.IssueCertificate(subject, key.public_key, params,
                                                t, kLifetimes[s.level]);
    if (s.level < kLeafLevel) {
      node->ca = std::make_unique<CertificateAuthority>(std::move(key),
                                                        node->certificate);
    } else {
      node->key = std::move(key);
    }
  }

  CertificateRef ref = node->certificate.Ref();
  s.generations.emplace_back(t, ref);
  nodes_.emplace(ref, std::move(node));
  ++s.next_generation;
  if (s.level < kLeafLevel) {
    s.next_time = AddYears(config_.epoch,
                           kCaPeriodYears[s.level] * s.next_generation);
  } else {
    s.next_time = AddDays(AddYears(t, 2), -60);
  }
}

void PkiWorld::AdvanceLocked(TimeInstant at) {
  for (;;) {
    Stream* next = nullptr;
    for (auto& s : streams_) {
      if (at < s->next_time) continue;
      if (next == nullptr ||
          std::make_tuple(s->next_time, s->level, s->hash_fn, s->entity_index) <
              std::make_tuple(next->next_time, next->level, next->hash_fn,
                              next->entity_index)) {
        next = s.get();
      }
    }
    if (next == nullptr) return;
    ProcessLocked(*next);
  }
}

const PkiWorld::Node& PkiWorld::NodeLocked(const CertificateRef& ref) {
  auto it = nodes_.find(ref);
  if (it == nodes_.end()) {
    throw Error(Errc::kUnknownIssuer, "unknown certificate '" + ref.subject +
                                          "' serial " +
                                          std::to_string(ref.serial));
  }
  return *it->second;
}

PkiWorld::Credential PkiWorld::LeafCredential(std::string_view entity,
                                              HashFunctionId hash_fn,
                                              TimeInstant at) {
  std::lock_guard<std::mutex> lock(mu_);
  if (at < config_.epoch) {
    throw Error(Errc::kCertificateExpired, "time precedes the PKI epoch");
  }
  AdvanceLocked(at);
  for (const auto& s : streams_) {
    if (s->level == kLeafLevel && s->hash_fn == hash_fn && s->entity == entity) {
      const CertificateRef* current = nullptr;
      for (const auto& [when, ref] : s->generations) {
        if (when <= at) current = &ref;
      }
      const Node& node = NodeLocked(*current);
      return {*node.key, node.certificate};
    }
  }
  throw Error(Errc::kUsage, "unknown PKI entity '" + std::string(entity) + "'");
}

VerificationData PkiWorld::Collect(const CertificateRef& leaf, TimeInstant at) {
  std::lock_guard<std::mutex> lock(mu_);
  AdvanceLocked(at);
  VerificationData vd;
  vd.collected_at = at;
  vd.leaf = NodeLocked(leaf).certificate;
  std::optional<CertificateRef> issuer = vd.leaf.issuer;
  while (issuer.has_value()) {
    const Node& node = NodeLocked(*issuer);
    vd.issuer_chain.push_back(node.certificate);
    vd.crls.push_back(node.ca->CrlAt(at));
    issuer = node.certificate.issuer;
  }
  return vd;
}

Certificate PkiWorld::FindCertificate(const CertificateRef& ref) {
  std::lock_guard<std::mutex> lock(mu_);
  return NodeLocked(ref).certificate;
}

Crl PkiWorld::Revoke(const CertificateRef& ref, TimeInstant at) {
  std::lock_guard<std::mutex> lock(mu_);
  AdvanceLocked(at);
  const Node& node = NodeLocked(ref);
  if (!node.certificate.issuer.has_value()) {
    throw Error(Errc::kUsage, "cannot revoke a root certificate");
  }
  return NodeLocked(*node.certificate.issuer).ca->Revoke(ref.serial, at);
}

}  // namespace mops
