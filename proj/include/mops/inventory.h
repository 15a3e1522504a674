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
#ifndef MOPS_INVENTORY_H_
#define MOPS_INVENTORY_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "mops/crypto.h"
#include "mops/pki.h"
#include "mops/time.h"

namespace mops {

using Primitive = std::variant<HashFunctionId, SignatureParams>;

std::string PrimitiveName(const Primitive& p);
// Throws Error(kUnknownPrimitive).
Primitive ParsePrimitive(std::string_view name);

struct InventoryEntry {
  Primitive primitive;
  // For signature parameters this is the scheme date; key_length_until is the
  // separately predicted date for the key size. The effective date is the
  // earlier of the two.
  TimeInstant secure_until;
  TimeInstant last_updated;
  std::optional<TimeInstant> key_length_until;

  TimeInstant EffectiveUntil() const;
  bool operator==(const InventoryEntry&) const = default;
};

// Predicted end-of-security dates per primitive. A value type: updates
// return a new inventory.
class SecurityInventory {
 public:
  SecurityInventory() = default;

  // Throws Error(kUnknownPrimitive).
  const InventoryEntry& Entry(const Primitive& p) const;
  TimeInstant SecureUntil(const Primitive& p) const {
    return Entry(p).EffectiveUntil();
  }
  // Half-open: at == secure_until is insecure.
  bool SecureAt(const Primitive& p, TimeInstant at) const {
    return at < SecureUntil(p);
  }

  // Shortens a lifetime. Throws Error(kLifetimeExtension) if any recorded
  // date would move later.
  SecurityInventory UpdateEntry(const Primitive& p, TimeInstant new_until,
                                TimeInstant at) const;

  // Line format: name TAB secure_until TAB last_updated [TAB key_length_until]
  std::string ToText() const;
  static SecurityInventory ParseText(std::string_view text);

  bool operator==(const SecurityInventory&) const = default;

 private:
  friend SecurityInventory DefaultLenstraInventory();
  std::map<std::string, InventoryEntry> entries_;
};

inline constexpr int kHorizonYear = 2130;

// SHA-256/RSA-2048 until 2038, SHA-384/RSA-4096 until 2084, SHA-512/RSA-8192
// beyond the simulation horizon.
SecurityInventory DefaultLenstraInventory();

// Earliest of hash date, scheme date, key-length date and the certificate's
// not_after.
TimeInstant ValidityEstimate(const SecurityInventory& inv,
                             HashFunctionId hash_fn,
                             const Certificate& issuer_cert);

}  // namespace mops

#endif  // MOPS_INVENTORY_H_
