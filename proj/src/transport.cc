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
#include "mops/transport.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <openssl/rand.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "mops/error.h"

namespace mops {

namespace {

void SplitEndpoint(const std::string& endpoint, std::string& host,
                   std::uint16_t& port) {
  const std::size_t colon = endpoint.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == endpoint.size()) {
    throw Error(Errc::kUsage, "endpoint must be host:port, got '" + endpoint + "'");
  }
  host = endpoint.substr(0, colon);
  const std::string p = endpoint.substr(colon + 1);
  if (p.size() > 5 || !std::all_of(p.begin(), p.end(), ::isdigit) || std::stoul(p) > 65535) {
    throw Error(Errc::kUsage, "bad port in endpoint '" + endpoint + "'");
  }
  port = static_cast<std::uint16_t>(std::stoul(p));
}

bool WriteAll(int fd, ByteView data) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    off += static_cast<std::size_t>(n);
  }
  return true;
}

bool ReadAll(int fd, std::uint8_t* out, std::size_t len) {
  std::size_t off = 0;
  while (off < len) {
    const ssize_t n = ::recv(fd, out + off, len - off, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    off += static_cast<std::size_t>(n);
  }
  return true;
}

// Reads one frame. Empty result: orderly close before the first byte.
// Throws Error(kTransport) for anything else that goes wrong.
Bytes ReadFrame(int fd) {
  Bytes frame(4);
  const ssize_t first = ::recv(fd, frame.data(), 1, 0);
  if (first == 0) return {};
  if (first < 0 || !ReadAll(fd, frame.data() + 1, 3)) {
    throw Error(Errc::kTransport, "connection lost while reading a frame");
  }
  const std::size_t len = (std::size_t{frame[0]} << 24) | (std::size_t{frame[1]} << 16) |
                          (std::size_t{frame[2]} << 8) | frame[3];
  if (len < kFrameHeader - 4 || len > kMaxFrame) {
    throw Error(Errc::kTransport, "frame length " + std::to_string(len) + " out of range");
  }
  frame.resize(4 + len);
  if (!ReadAll(fd, frame.data() + 4, len)) {
    throw Error(Errc::kTransport, "connection lost while reading a frame");
  }
  return frame;
}

}  // namespace

std::string_view MessageKindName(MessageKind kind) {
  switch (kind) {
    case MessageKind::kTsaRequest: return "tsa_request";
    case MessageKind::kTsaResponse: return "tsa_response";
    case MessageKind::kNaInit: return "na_init";
    case MessageKind::kNaRenew: return "na_renew";
    case MessageKind::kNaMigrate: return "na_migrate";
    case MessageKind::kNaResponse: return "na_response";
    case MessageKind::kInfoQuery: return "info_query";
    case MessageKind::kInfoResponse: return "info_response";
    case MessageKind::kStorePut: return "store_put";
    case MessageKind::kStoreGet: return "store_get";
    case MessageKind::kStoreResponse: return "store_response";
    case MessageKind::kError: return "error";
  }
  return "unknown";
}

CorrelationId NewCorrelationId() {
  CorrelationId id;
  if (RAND_bytes(id.data(), static_cast<int>(id.size())) != 1) {
    throw Error(Errc::kTransport, "no randomness for correlation id");
  }
  return id;
}

Bytes EncodeFrame(const ServiceMessage& m) {
  const std::size_t len = 1 + m.id.size() + m.body.size();
  if (len > kMaxFrame) throw Error(Errc::kMalformedMessage, "message too large");
  Bytes out;
  out.reserve(4 + len);
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back((len >> shift) & 0xff);
  out.push_back(static_cast<std::uint8_t>(m.kind));
  out.insert(out.end(), m.id.begin(), m.id.end());
  out.insert(out.end(), m.body.begin(), m.body.end());
  return out;
}

ServiceMessage DecodeFrame(ByteView frame) {
  if (frame.size() < kFrameHeader) {
    throw Error(Errc::kMalformedMessage, "frame shorter than its header");
  }
  const std::size_t len = (std::size_t{frame[0]} << 24) | (std::size_t{frame[1]} << 16) |
                          (std::size_t{frame[2]} << 8) | frame[3];
  if (len != frame.size() - 4) {
    throw Error(Errc::kMalformedMessage, "frame length field disagrees with frame size");
  }
  const std::uint8_t kind = frame[4];
  if (kind < 1 || kind > static_cast<std::uint8_t>(MessageKind::kError)) {
    throw Error(Errc::kMalformedMessage, "unknown message kind " + std::to_string(kind));
  }
  ServiceMessage m;
  m.kind = static_cast<MessageKind>(kind);
  std::copy_n(frame.begin() + 5, m.id.size(), m.id.begin());
  m.body.assign(frame.begin() + kFrameHeader, frame.end());
  return m;
}

ServiceMessage LoopbackTransport::Call(const ServiceMessage& request) {
  const Bytes response = handler_(EncodeFrame(request));
  try {
    return DecodeFrame(response);
  } catch (const Error& e) {
    throw Error(Errc::kTransport, e.detail());
  }
}

TcpTransport::TcpTransport(std::string endpoint) {
  SplitEndpoint(endpoint, host_, port_);
}

TcpTransport::~TcpTransport() {
  if (fd_ >= 0) ::close(fd_);
}

ServiceMessage TcpTransport::Call(const ServiceMessage& request) {
  std::lock_guard<std::mutex> lock(mu_);
  if (fd_ < 0) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    const std::string port = std::to_string(port_);
    if (::getaddrinfo(host_.c_str(), port.c_str(), &hints, &res) != 0) {
      throw Error(Errc::kTransport, "cannot resolve " + host_);
    }
    for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
      const int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) {
        fd_ = fd;
        break;
      }
      ::close(fd);
    }
    ::freeaddrinfo(res);
    if (fd_ < 0) {
      throw Error(Errc::kTransport, "cannot connect to " + host_ + ":" + port);
    }
    const int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  }
  auto fail = [&](const std::string& why) {
    ::close(fd_);
    fd_ = -1;
    return Error(Errc::kTransport, why);
  };
  if (!WriteAll(fd_, EncodeFrame(request))) throw fail("send failed");
  Bytes frame;
  try {
    frame = ReadFrame(fd_);
  } catch (const Error& e) {
    throw fail(e.detail());
  }
  if (frame.empty()) throw fail("server closed the connection");
  try {
    return DecodeFrame(frame);
  } catch (const Error& e) {
    throw fail(e.detail());
  }
}

TcpServer::TcpServer(FrameHandler handler, const std::string& bind)
    : handler_(std::move(handler)) {
  std::uint16_t port = 0;
  SplitEndpoint(bind, host_, port);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host_.c_str(), &addr.sin_addr) != 1) {
    throw Error(Errc::kUsage, "bind address must be an IPv4 literal: " + host_);
  }
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error(Errc::kTransport, "socket failed");
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listen_fd_, 16) != 0) {
    ::close(listen_fd_);
    throw Error(Errc::kTransport, "cannot listen on " + bind + ": " + std::strerror(errno));
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  acceptor_ = std::thread([this] { AcceptLoop(); });
}

TcpServer::~TcpServer() { Stop(); }

std::string TcpServer::endpoint() const {
  return host_ + ":" + std::to_string(port_);
}

void TcpServer::Stop() {
  if (stopping_.exchange(true)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (std::thread& t : workers) t.join();
}

void TcpServer::AcceptLoop() {
  while (!stopping_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      return;
    }
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    std::lock_guard<std::mutex> lock(mu_);
    if (stopping_) {
      ::close(fd);
      return;
    }
    client_fds_.push_back(fd);
    workers_.emplace_back([this, fd] { Serve(fd); });
  }
}

void TcpServer::Serve(int fd) {
  while (!stopping_) {
    Bytes frame;
    try {
      frame = ReadFrame(fd);
    } catch (const Error&) {
      break;
    }
    if (frame.empty() || !WriteAll(fd, handler_(frame))) break;
  }
  std::lock_guard<std::mutex> lock(mu_);
  client_fds_.erase(std::remove(client_fds_.begin(), client_fds_.end(), fd),
                    client_fds_.end());
  ::close(fd);
}

}  // namespace mops
