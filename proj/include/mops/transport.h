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
#ifndef MOPS_TRANSPORT_H_
#define MOPS_TRANSPORT_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "mops/bytes.h"

namespace mops {

enum class MessageKind : std::uint8_t {
  kTsaRequest = 1,
  kTsaResponse = 2,
  kNaInit = 3,
  kNaRenew = 4,
  kNaMigrate = 5,
  kNaResponse = 6,
  kInfoQuery = 7,
  kInfoResponse = 8,
  kStorePut = 9,
  kStoreGet = 10,
  kStoreResponse = 11,
  kError = 12,
};

inline constexpr std::array kAllMessageKinds = {
    MessageKind::kTsaRequest, MessageKind::kTsaResponse, MessageKind::kNaInit,
    MessageKind::kNaRenew,    MessageKind::kNaMigrate,   MessageKind::kNaResponse,
    MessageKind::kInfoQuery,  MessageKind::kInfoResponse, MessageKind::kStorePut,
    MessageKind::kStoreGet,   MessageKind::kStoreResponse, MessageKind::kError,
};

std::string_view MessageKindName(MessageKind kind);

using CorrelationId = std::array<std::uint8_t, 16>;

CorrelationId NewCorrelationId();

struct ServiceMessage {
  MessageKind kind = MessageKind::kError;
  CorrelationId id{};
  Bytes body;

  bool operator==(const ServiceMessage&) const = default;
};

// Frame: 4-byte big-endian length of the rest, kind byte, 16-byte id, body.
inline constexpr std::size_t kFrameHeader = 4 + 1 + 16;
inline constexpr std::size_t kMaxFrame = std::size_t{1} << 28;

Bytes EncodeFrame(const ServiceMessage& message);
// Expects exactly one complete frame. Throws Error(kMalformedMessage).
ServiceMessage DecodeFrame(ByteView frame);

// Takes one request frame, returns one response frame. Must not throw for
// bad input; malformed frames get an error response.
using FrameHandler = std::function<Bytes(ByteView)>;

class Transport {
 public:
  virtual ~Transport() = default;
  // Sends a request and waits for its response. Throws Error(kTransport).
  virtual ServiceMessage Call(const ServiceMessage& request) = 0;
};

// In-process: every call goes through the full frame encoding.
class LoopbackTransport : public Transport {
 public:
  explicit LoopbackTransport(FrameHandler handler) : handler_(std::move(handler)) {}
  ServiceMessage Call(const ServiceMessage& request) override;

 private:
  FrameHandler handler_;
};

// Blocking client over one TCP connection, opened lazily.
class TcpTransport : public Transport {
 public:
  // endpoint is "host:port". Throws Error(kUsage) if it does not parse.
  explicit TcpTransport(std::string endpoint);
  ~TcpTransport() override;
  ServiceMessage Call(const ServiceMessage& request) override;

 private:
  std::string host_;
  std::uint16_t port_ = 0;
  int fd_ = -1;
  std::mutex mu_;
};

// Accepts connections on a background thread and serves each on its own
// thread; requests on one connection are answered in order.
class TcpServer {
 public:
  // bind is "host:port"; port 0 picks a free port.
  TcpServer(FrameHandler handler, const std::string& bind = "127.0.0.1:0");
  ~TcpServer();

  std::uint16_t port() const { return port_; }
  std::string endpoint() const;
  void Stop();

 private:
  void AcceptLoop();
  void Serve(int fd);

  FrameHandler handler_;
  std::string host_;
  std::uint16_t port_ = 0;
  int listen_fd_ = -1;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex mu_;
  std::vector<std::thread> workers_;
  std::vector<int> client_fds_;
};

}  // namespace mops

#endif  // MOPS_TRANSPORT_H_
