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

#include <gtest/gtest.h>

#include <functional>

#include "mops/error.h"
#include "mops/service.h"
#include "mops/transport.h"
#include "test_support.h"

namespace mops {
namespace {

using testing::Fixture;
using testing::kH256;
using testing::kH384;

Errc CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kUsage;
}

AttestRequest Request(HashFunctionId h, const std::string& data, TimeInstant t) {
  AttestRequest r;
  r.hash_fn = h;
  r.payload_digest = Hash(h, ToBytes(data));
  r.requested_time = t;
  return r;
}

TEST(FrameTest, RoundTripAndRejections) {
  for (MessageKind kind : kAllMessageKinds) {
    ServiceMessage m{kind, NewCorrelationId(), ToBytes("body")};
    EXPECT_EQ(DecodeFrame(EncodeFrame(m)), m) << MessageKindName(kind);
  }
  EXPECT_NE(NewCorrelationId(), NewCorrelationId());
  Bytes frame = EncodeFrame({MessageKind::kTsaRequest, NewCorrelationId(), {}});
  EXPECT_EQ(frame.size(), kFrameHeader);
  EXPECT_EQ(CodeOf([&] { DecodeFrame(Bytes(frame.begin(), frame.end() - 1)); }),
            Errc::kMalformedMessage);
  Bytes bad_kind = frame;
  bad_kind[4] = 99;
  EXPECT_EQ(CodeOf([&] { DecodeFrame(bad_kind); }), Errc::kMalformedMessage);
  Bytes bad_length = frame;
  bad_length[3] ^= 1;
  EXPECT_EQ(CodeOf([&] { DecodeFrame(bad_length); }), Errc::kMalformedMessage);
}

TEST(StoreTest, MemoryAndFolder) {
  MemoryStore memory;
  FolderStore folder(testing::TempDir("store"));
  for (ObjectStore* s : {static_cast<ObjectStore*>(&memory),
                         static_cast<ObjectStore*>(&folder)}) {
    ObjectHandle a = s->Put(ToBytes("alpha"));
    ObjectHandle b = s->Put(ToBytes("alpha"));
    EXPECT_NE(a, b);
    EXPECT_EQ(s->Get(a), ToBytes("alpha"));
    EXPECT_EQ(s->Get(s->Put({})), Bytes{});
    EXPECT_EQ(CodeOf([&] { s->Get("missing"); }), Errc::kUnknownHandle);
    EXPECT_EQ(CodeOf([&] { s->Get("../etc/passwd"); }), Errc::kUnknownHandle);
  }
}

TEST(ServiceHostTest, LocalAndRemoteAgree) {
  Fixture fx;
  MemoryStore store;
  ServiceHost host({&fx.tsa, &fx.na, &fx.inv, &store, {}});
  LoopbackTransport loop(host.Handler());
  ServiceClient client(loop);

  AttestRequest r = Request(kH256, "payload", fx.t0);
  EXPECT_EQ(client.Timestamp(r), fx.tsa.Attest(r, fx.t0));
  r.na_extras = NaExtras{};
  EXPECT_EQ(client.Notarize(r), fx.na.Attest(r, fx.t0));

  InfoAnswer info = client.Info(kH256, FromDate(2030, 1, 1));
  EXPECT_EQ(info, QueryInventory(fx.inv, kH256, FromDate(2030, 1, 1)));
  EXPECT_TRUE(info.secure);
  EXPECT_EQ(info.secure_until, FromDate(2038, 1, 1));
  EXPECT_FALSE(client.Info(PairedParams(kH256), FromDate(2040, 1, 1)).secure);

  ObjectHandle h = client.Put(ToBytes("stored"));
  EXPECT_EQ(client.Get(h), ToBytes("stored"));
  EXPECT_EQ(CodeOf([&] { client.Get("nope"); }), Errc::kUnknownHandle);

  // Remote errors keep their code.
  AttestRequest bad = Request(kH256, "x", fx.t0);
  EXPECT_EQ(CodeOf([&] { client.Notarize(bad); }), Errc::kNaBadRequest);
  RemoteAttester remote_na(loop, IssuerKind::kNa);
  EvidenceRecord naw = NawInit("doc0", fx.docs, fx.t0, kH256, remote_na, fx.ctx);
  EXPECT_TRUE(fx.Verify(naw, AddDays(fx.t0, 1)).valid);
  TimeInstant t = AddDays(fx.t0, 20);
  naw = Renew(naw, t, kH384, fx.docs, remote_na, fx.ctx);
  EXPECT_TRUE(fx.Verify(naw, AddDays(t, 1)).valid);
}

TEST(ServiceHostTest, Errors) {
  Fixture fx;
  ServiceHost tsa_only({&fx.tsa, nullptr, nullptr, nullptr, {}});
  CorrelationId id = NewCorrelationId();
  ServiceMessage resp = tsa_only.Dispatch({MessageKind::kStorePut, id, {}});
  EXPECT_EQ(resp.kind, MessageKind::kError);
  EXPECT_EQ(resp.id, id);
  EXPECT_EQ(DecodeErrorBody(resp.body).code(), Errc::kUnknownEndpoint);
  resp = tsa_only.Dispatch({MessageKind::kTsaRequest, id, ToBytes("junk")});
  EXPECT_EQ(DecodeErrorBody(resp.body).code(), Errc::kMalformedMessage);
  resp = tsa_only.Dispatch({MessageKind::kTsaResponse, id, {}});
  EXPECT_EQ(DecodeErrorBody(resp.body).code(), Errc::kMalformedMessage);
  Bytes reply = tsa_only.HandleFrame(Bytes{1, 2, 3});
  EXPECT_EQ(DecodeErrorBody(DecodeFrame(reply).body).code(), Errc::kMalformedMessage);
  Error e = DecodeErrorBody(EncodeErrorBody(Errc::kStorage, "disk full"));
  EXPECT_EQ(e.code(), Errc::kStorage);
  EXPECT_EQ(e.detail(), "disk full");
}

TEST(ServiceHostTest, NotaryOperationsTravelAsTheirMessageKind) {
  EXPECT_EQ(NaMessageKind(NaOperation::kInit), MessageKind::kNaInit);
  EXPECT_EQ(NaMessageKind(NaOperation::kNotarize), MessageKind::kNaInit);
  EXPECT_EQ(NaMessageKind(NaOperation::kCumulate), MessageKind::kNaInit);
  EXPECT_EQ(NaMessageKind(NaOperation::kRenew), MessageKind::kNaRenew);
  EXPECT_EQ(NaMessageKind(NaOperation::kRewrap), MessageKind::kNaRenew);
  EXPECT_EQ(NaMessageKind(NaOperation::kMigrate), MessageKind::kNaMigrate);
  Fixture fx;
  ServiceHost host({nullptr, &fx.na, nullptr, nullptr, {}});
  AttestRequest r = Request(kH256, "x", fx.t0);
  r.na_extras = NaExtras{};
  ServiceMessage resp = host.Dispatch({MessageKind::kNaRenew, NewCorrelationId(), r.Encode()});
  EXPECT_EQ(DecodeErrorBody(resp.body).code(), Errc::kMalformedMessage);
}

TEST(ServiceHostTest, ClockProvider) {
  Fixture fx;
  TimeInstant fixed = FromDate(2021, 2, 3);
  ServiceHost host({&fx.tsa, nullptr, nullptr, nullptr, [fixed] { return fixed; }});
  LoopbackTransport loop(host.Handler());
  ServiceClient client(loop);
  EXPECT_EQ(client.Timestamp(Request(kH256, "x", fx.t0)).stated_time, fixed);
  ServiceHost follows({&fx.tsa, nullptr, nullptr, nullptr, {}});
  LoopbackTransport loop2(follows.Handler());
  ServiceClient client2(loop2);
  EXPECT_EQ(client2.Timestamp(Request(kH256, "x", fx.t0)).stated_time, fx.t0);
}

TEST(TcpTest, RoundTripOverSockets) {
  Fixture fx;
  MemoryStore store;
  ServiceHost host({&fx.tsa, &fx.na, &fx.inv, &store, {}});
  TcpServer server(host.Handler());
  ASSERT_NE(server.port(), 0);
  TcpTransport tcp(server.endpoint());
  RemoteAttester remote(tcp, IssuerKind::kTsa);
  EvidenceRecord r = Protect(StructureKind::kMds, {"doc0", "doc1", "doc2"}, false, fx.docs,
                             fx.t0, kH256, remote, fx.ctx);
  EXPECT_TRUE(fx.Verify(r, AddDays(fx.t0, 1)).valid);
  ServiceClient client(tcp);
  Bytes big(3 << 20, 7);
  EXPECT_EQ(client.Get(client.Put(big)), big);
  server.Stop();
  EXPECT_EQ(CodeOf([&] { client.Put(ToBytes("late")); }), Errc::kTransport);
}

TEST(TcpTest, EndpointErrors) {
  EXPECT_EQ(CodeOf([] { TcpTransport t("no-port"); }), Errc::kUsage);
  EXPECT_EQ(CodeOf([] { TcpTransport t("localhost:99999"); }), Errc::kUsage);
  std::string endpoint;
  {
    TcpServer s([](ByteView) { return Bytes{}; });
    endpoint = s.endpoint();
  }
  TcpTransport closed(endpoint);
  ServiceClient client(closed);
  EXPECT_EQ(CodeOf([&] { client.Put(ToBytes("x")); }), Errc::kTransport);
}

}  // namespace
}  // namespace mops
