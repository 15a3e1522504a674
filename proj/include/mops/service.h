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
#ifndef MOPS_SERVICE_H_
#define MOPS_SERVICE_H_

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "mops/attestation.h"
#include "mops/inventory.h"
#include "mops/transport.h"

namespace mops {

// Opaque storage identifier: 32 lowercase hex characters (128 random bits).
using ObjectHandle = std::string;

ObjectHandle NewObjectHandle();

class ObjectStore {
 public:
  virtual ~ObjectStore() = default;
  virtual ObjectHandle Put(ByteView bytes) = 0;
  // Throws Error(kUnknownHandle).
  virtual Bytes Get(const ObjectHandle& handle) = 0;
};

// One file per object in a single directory.
class FolderStore : public ObjectStore {
 public:
  // Creates the directory if needed. Throws Error(kStorage).
  explicit FolderStore(std::filesystem::path dir);
  ObjectHandle Put(ByteView bytes) override;
  Bytes Get(const ObjectHandle& handle) override;

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
};

class MemoryStore : public ObjectStore {
 public:
  ObjectHandle Put(ByteView bytes) override;
  Bytes Get(const ObjectHandle& handle) override;

 private:
  std::map<ObjectHandle, Bytes> objects_;
  std::mutex mu_;
};

struct InfoAnswer {
  bool secure = false;
  TimeInstant secure_until;

  bool operator==(const InfoAnswer&) const = default;
};

// Inventory lookup as the information service answers it.
InfoAnswer QueryInventory(const SecurityInventory& inv, const Primitive& p,
                          TimeInstant at);

// The providers one service host exposes. Absent providers answer with
// Error(kUnknownEndpoint).
struct ServiceProviders {
  Attester* tsa = nullptr;
  Attester* na = nullptr;
  const SecurityInventory* inventory = nullptr;
  ObjectStore* store = nullptr;
  // The time attestations are issued at. Unset: the request's requested_time,
  // which lets simulated clients drive the service clock.
  std::function<TimeInstant()> clock;
};

// Routes requests to providers. Provider errors become error responses
// carrying the library error code; nothing escapes as an exception.
class ServiceHost {
 public:
  explicit ServiceHost(ServiceProviders providers) : p_(std::move(providers)) {}

  ServiceMessage Dispatch(const ServiceMessage& request);
  Bytes HandleFrame(ByteView frame);
  FrameHandler Handler() {
    return [this](ByteView f) { return HandleFrame(f); };
  }

 private:
  ServiceMessage DispatchOrThrow(const ServiceMessage& request);

  ServiceProviders p_;
};

// Which NA request kind carries an operation: na_init for new attestations
// (notarize, init, cumulate), na_renew for renew/rewrap, na_migrate.
MessageKind NaMessageKind(NaOperation op);

// Typed client. Error responses are rethrown as Error with the remote code.
class ServiceClient {
 public:
  explicit ServiceClient(Transport& transport) : transport_(transport) {}

  Attestation Timestamp(const AttestRequest& request);
  Attestation Notarize(const AttestRequest& request);
  InfoAnswer Info(const Primitive& p, TimeInstant at);
  ObjectHandle Put(ByteView bytes);
  Bytes Get(const ObjectHandle& handle);

  // Sends one request and checks the response id and kind.
  ServiceMessage Roundtrip(MessageKind kind, Bytes body, MessageKind expect);

 private:
  Transport& transport_;
};

// An attester that lives behind a transport.
class RemoteAttester : public Attester {
 public:
  RemoteAttester(Transport& transport, IssuerKind kind)
      : client_(transport), kind_(kind) {}
  IssuerKind kind() const override { return kind_; }
  Attestation Attest(const AttestRequest& request, TimeInstant clock) override;

 private:
  ServiceClient client_;
  IssuerKind kind_;
};

// Message bodies, exposed for tests and documentation.
Bytes EncodeInfoQuery(const Primitive& p, TimeInstant at);
Bytes EncodeInfoAnswer(const InfoAnswer& a);
InfoAnswer DecodeInfoAnswer(ByteView body);
Bytes EncodeErrorBody(Errc code, std::string_view message);
// Rebuilds the remote error.
Error DecodeErrorBody(ByteView body);

}  // namespace mops

#endif  // MOPS_SERVICE_H_
