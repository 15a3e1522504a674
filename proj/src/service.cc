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
#include "mops/service.h"

#include <openssl/rand.h>

#include <fstream>
#include <iterator>

#include "mops/error.h"

namespace mops {

namespace {

bool IsHandle(const std::string& h) {
  return h.size() == 32 &&
         h.find_first_not_of("0123456789abcdef") == std::string::npos;
}

}  // namespace

ObjectHandle NewObjectHandle() {
  std::uint8_t raw[16];
  if (RAND_bytes(raw, sizeof raw) != 1) {
    throw Error(Errc::kStorage, "no randomness for object handle");
  }
  return HexEncode(ByteView(raw, sizeof raw));
}

FolderStore::FolderStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    throw Error(Errc::kStorage, "cannot use storage folder " + dir_.string());
  }
}

ObjectHandle FolderStore::Put(ByteView bytes) {
  std::lock_guard<std::mutex> lock(mu_);
  ObjectHandle h;
  do {
    h = NewObjectHandle();
  } while (std::filesystem::exists(dir_ / h));
  const std::filesystem::path tmp = dir_ / (h + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::kStorage, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, dir_ / h, ec);
  if (ec) throw Error(Errc::kStorage, "rename failed: " + ec.message());
  return h;
}

Bytes FolderStore::Get(const ObjectHandle& handle) {
  if (!IsHandle(handle)) throw Error(Errc::kUnknownHandle, "no object '" + handle + "'");
  std::lock_guard<std::mutex> lock(mu_);
  std::ifstream in(dir_ / handle, std::ios::binary);
  if (!in) throw Error(Errc::kUnknownHandle, "no object '" + handle + "'");
  Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::kStorage, "read failed: " + handle);
  return out;
}

ObjectHandle MemoryStore::Put(ByteView bytes) {
  std::lock_guard<std::mutex> lock(mu_);
  ObjectHandle h;
  do {
    h = NewObjectHandle();
  } while (objects_.count(h));
  objects_.emplace(h, Bytes(bytes.begin(), bytes.end()));
  return h;
}

Bytes MemoryStore::Get(const ObjectHandle& handle) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = objects_.find(handle);
  if (it == objects_.end()) throw Error(Errc::kUnknownHandle, "no object '" + handle + "'");
  return it->second;
}

InfoAnswer QueryInventory(const SecurityInventory& inv, const Primitive& p,
                          TimeInstant at) {
  return {inv.SecureAt(p, at), inv.SecureUntil(p)};
}

Bytes EncodeInfoQuery(const Primitive& p, TimeInstant at) {
  return Encoder().Field(PrimitiveName(p)).I64(at.seconds).Take();
}

Bytes EncodeInfoAnswer(const InfoAnswer& a) {
  return Encoder().U8(a.secure ? 1 : 0).I64(a.secure_until.seconds).Take();
}

InfoAnswer DecodeInfoAnswer(ByteView body) {
  Decoder d(body);
  InfoAnswer a;
  const std::uint8_t secure = d.U8();
  if (secure > 1) throw Error(Errc::kParse, "info answer: bad flag");
  a.secure = secure == 1;
  a.secure_until.seconds = d.I64();
  d.Finish();
  return a;
}

Bytes EncodeErrorBody(Errc code, std::string_view message) {
  return Encoder().U64(static_cast<std::uint64_t>(code)).Field(message).Take();
}

Error DecodeErrorBody(ByteView body) {
  Decoder d(body);
  const std::uint64_t raw = d.U64();
  std::string message = d.Text();
  d.Finish();
  if (raw < static_cast<std::uint64_t>(Errc::kParse) ||
      raw > static_cast<std::uint64_t>(Errc::kUsage)) {
    throw Error(Errc::kParse, "error body: unknown code " + std::to_string(raw));
  }
  return Error(static_cast<Errc>(raw), message);
}

MessageKind NaMessageKind(NaOperation op) {
  switch (op) {
    case NaOperation::kRenew:
    case NaOperation::kRewrap:
      return MessageKind::kNaRenew;
    case NaOperation::kMigrate:
      return MessageKind::kNaMigrate;
    default:
      return MessageKind::kNaInit;
  }
}

ServiceMessage ServiceHost::DispatchOrThrow(const ServiceMessage& req) {
  auto need = [](auto* provider, std::string_view what) {
    if (provider == nullptr) {
      throw Error(Errc::kUnknownEndpoint, "this host runs no " + std::string(what));
    }
    return provider;
  };
  auto decode_request = [](const Bytes& body) {
    try {
      return AttestRequest::Decode(body);
    } catch (const Error& e) {
      throw Error(Errc::kMalformedMessage, e.what());
    }
  };
  auto clock = [this](const AttestRequest& r) {
    return p_.clock ? p_.clock() : r.requested_time;
  };

  ServiceMessage resp;
  resp.id = req.id;
  switch (req.kind) {
    case MessageKind::kTsaRequest: {
      Attester* tsa = need(p_.tsa, "timestamp authority");
      const AttestRequest r = decode_request(req.body);
      resp.kind = MessageKind::kTsaResponse;
      resp.body = tsa->Attest(r, clock(r)).Encode();
      return resp;
    }
    case MessageKind::kNaInit:
    case MessageKind::kNaRenew:
    case MessageKind::kNaMigrate: {
      Attester* na = need(p_.na, "notarial authority");
      const AttestRequest r = decode_request(req.body);
      const NaOperation op =
          r.na_extras ? r.na_extras->operation : NaOperation::kNotarize;
      if (NaMessageKind(op) != req.kind) {
        throw Error(Errc::kMalformedMessage,
                    std::string(MessageKindName(req.kind)) +
                        " does not carry this notary operation");
      }
      resp.kind = MessageKind::kNaResponse;
      resp.body = na->Attest(r, clock(r)).Encode();
      return resp;
    }
    case MessageKind::kInfoQuery: {
      const SecurityInventory* inv = need(p_.inventory, "information service");
      Primitive p;
      TimeInstant at;
      try {
        Decoder d(req.body);
        p = ParsePrimitive(d.Text());
        at.seconds = d.I64();
        d.Finish();
      } catch (const Error& e) {
        if (e.code() == Errc::kUnknownPrimitive) throw;
        throw Error(Errc::kMalformedMessage, e.what());
      }
      resp.kind = MessageKind::kInfoResponse;
      resp.body = EncodeInfoAnswer(QueryInventory(*inv, p, at));
      return resp;
    }
    case MessageKind::kStorePut:
      resp.kind = MessageKind::kStoreResponse;
      resp.body = ToBytes(need(p_.store, "storage service")->Put(req.body));
      return resp;
    case MessageKind::kStoreGet:
      resp.kind = MessageKind::kStoreResponse;
      resp.body = need(p_.store, "storage service")->Get(ToString(req.body));
      return resp;
    default:
      throw Error(Errc::kMalformedMessage,
                  std::string(MessageKindName(req.kind)) + " is not a request");
  }
}

ServiceMessage ServiceHost::Dispatch(const ServiceMessage& request) {
  try {
    return DispatchOrThrow(request);
  } catch (const Error& e) {
    return {MessageKind::kError, request.id,
            EncodeErrorBody(e.code(), e.detail())};
  } catch (const std::exception& e) {
    return {MessageKind::kError, request.id, EncodeErrorBody(Errc::kStorage, e.what())};
  }
}

Bytes ServiceHost::HandleFrame(ByteView frame) {
  ServiceMessage request;
  try {
    request = DecodeFrame(frame);
  } catch (const Error& e) {
    // Echo whatever id bytes arrived so the caller can still correlate.
    if (frame.size() >= kFrameHeader) {
      std::copy_n(frame.begin() + 5, request.id.size(), request.id.begin());
    }
    return EncodeFrame({MessageKind::kError, request.id,
                        EncodeErrorBody(e.code(), e.detail())});
  }
  return EncodeFrame(Dispatch(request));
}

ServiceMessage ServiceClient::Roundtrip(MessageKind kind, Bytes body,
                                        MessageKind expect) {
  ServiceMessage req{kind, NewCorrelationId(), std::move(body)};
  ServiceMessage resp = transport_.Call(req);
  if (resp.id != req.id) {
    throw Error(Errc::kTransport, "response id does not match the request");
  }
  if (resp.kind == MessageKind::kError) {
    Error remote = [&] {
      try {
        return DecodeErrorBody(resp.body);
      } catch (const Error& e) {
        return Error(Errc::kTransport, std::string("bad error response: ") + e.what());
      }
    }();
    throw remote;
  }
  if (resp.kind != expect) {
    throw Error(Errc::kTransport, "expected " + std::string(MessageKindName(expect)) +
                                      ", got " + std::string(MessageKindName(resp.kind)));
  }
  return resp;
}

namespace {

Attestation DecodeAttestationBody(const Bytes& body) {
  try {
    return Attestation::Decode(body);
  } catch (const Error& e) {
    throw Error(Errc::kTransport, std::string("bad attestation response: ") + e.what());
  }
}

}  // namespace

Attestation ServiceClient::Timestamp(const AttestRequest& request) {
  return DecodeAttestationBody(
      Roundtrip(MessageKind::kTsaRequest, request.Encode(), MessageKind::kTsaResponse).body);
}

Attestation ServiceClient::Notarize(const AttestRequest& request) {
  const NaOperation op =
      request.na_extras ? request.na_extras->operation : NaOperation::kNotarize;
  return DecodeAttestationBody(
      Roundtrip(NaMessageKind(op), request.Encode(), MessageKind::kNaResponse).body);
}

InfoAnswer ServiceClient::Info(const Primitive& p, TimeInstant at) {
  ServiceMessage m =
      Roundtrip(MessageKind::kInfoQuery, EncodeInfoQuery(p, at), MessageKind::kInfoResponse);
  try {
    return DecodeInfoAnswer(m.body);
  } catch (const Error& e) {
    throw Error(Errc::kTransport, e.what());
  }
}

ObjectHandle ServiceClient::Put(ByteView bytes) {
  ServiceMessage m = Roundtrip(MessageKind::kStorePut, Bytes(bytes.begin(), bytes.end()),
                               MessageKind::kStoreResponse);
  ObjectHandle h = ToString(m.body);
  if (!IsHandle(h)) throw Error(Errc::kTransport, "malformed object handle");
  return h;
}

Bytes ServiceClient::Get(const ObjectHandle& handle) {
  return Roundtrip(MessageKind::kStoreGet, ToBytes(handle), MessageKind::kStoreResponse).body;
}

Attestation RemoteAttester::Attest(const AttestRequest& request, TimeInstant) {
  return kind_ == IssuerKind::kTsa ? client_.Timestamp(request)
                                   : client_.Notarize(request);
}

}  // namespace mops
