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
#include <random>
#include <set>

#include "json.hpp"
#include "mops/container.h"
#include "mops/error.h"
#include "mops/evidence_format.h"
#include "mops/migrate.h"
#include "mops/zip.h"
#include "test_support.h"

namespace mops {
namespace {

using testing::Fixture;
using testing::kH256;
using testing::kH384;
using Json = nlohmann::ordered_json;

Errc CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kUsage;
}

std::vector<EvidenceRecord> HonestRecords(Fixture& fx) {
  std::vector<EvidenceRecord> out;
  for (StructureKind kind : kAllStructures) {
    EvidenceRecord r = Protect(kind, {"doc0", "doc1"}, kind != StructureKind::kMds,
                               fx.docs, fx.t0, kH256, fx.AttesterFor(kind), fx.ctx);
    out.push_back(Renew(r, AddDays(fx.t0, 9), kH384, fx.docs, fx.AttesterFor(kind), fx.ctx));
  }
  out.push_back(MigrateToSequence(out[0], StructureKind::kSls, std::nullopt,
                                  AddDays(fx.t0, 10), kH384, fx.docs, fx.tsa, fx.ctx));
  return out;
}

TEST(EvidenceFormatTest, HonestRecordsRoundTrip) {
  Fixture fx;
  for (const EvidenceRecord& r : HonestRecords(fx)) {
    std::string text = SerializeRecord(r);
    EvidenceRecord back = ParseRecord(std::string_view(text));
    EXPECT_EQ(back, r) << StructureName(r.kind);
    EXPECT_EQ(SerializeRecord(back), text);
    EXPECT_EQ(ParseRecord(ByteView(ToBytes(text))), r);
  }
}

TEST(EvidenceFormatTest, RandomRecordsRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    EvidenceRecord r = testing::RandomRecord(rng, {"a", "b", "c"});
    std::string text = SerializeRecord(r);
    ASSERT_EQ(ParseRecord(std::string_view(text)), r) << text;
  }
}

TEST(EvidenceFormatTest, StrictReaderRejections) {
  Fixture fx;
  EvidenceRecord r = AsInit("doc0", fx.docs, fx.t0, kH256, fx.tsa, fx.ctx);
  const Json base = Json::parse(SerializeRecord(r));
  auto rejects = [](const Json& j) {
    return CodeOf([&] { ParseRecord(std::string_view(j.dump())); });
  };
  EXPECT_NO_THROW(ParseRecord(std::string_view(base.dump())));

  Json extra = base;
  extra["comment"] = "hi";
  EXPECT_EQ(rejects(extra), Errc::kParse);

  Json version = base;
  version["format-version"] = 2;
  EXPECT_EQ(rejects(version), Errc::kParse);

  Json time = base;
  time["created-at"] = "2020-03-01";
  EXPECT_EQ(rejects(time), Errc::kParse);

  std::string upper = SerializeRecord(r);
  std::string digest = HexEncode(HeadAttestation(r).attested_digest);
  std::size_t at = upper.find(digest);
  ASSERT_NE(at, std::string::npos);
  for (std::size_t i = at; i < at + digest.size(); ++i) {
    upper[i] = static_cast<char>(std::toupper(static_cast<unsigned char>(upper[i])));
  }
  if (upper != SerializeRecord(r)) {
    EXPECT_EQ(CodeOf([&] { ParseRecord(std::string_view(upper)); }), Errc::kParse);
  }

  Json structure = base;
  structure["structure"] = "XYZ";
  EXPECT_EQ(rejects(structure), Errc::kParse);

  EXPECT_EQ(CodeOf([&] { ParseRecord(std::string_view("{\"format-version\": 1")); }),
            Errc::kParse);
  EXPECT_EQ(CodeOf([&] { ParseRecord(std::string_view("[]")); }), Errc::kParse);
}

TEST(EvidenceFormatTest, SignatureRoundTrip) {
  Fixture fx;
  const DocumentSignature& sig = fx.docs.at("doc0").signature;
  std::string text = SerializeSignature(sig);
  EXPECT_EQ(ParseSignature(text), sig);
  Json j = Json::parse(text);
  j["extra"] = 1;
  EXPECT_EQ(CodeOf([&] { ParseSignature(j.dump()); }), Errc::kParse);
}

MopsContainer SampleContainer(Fixture& fx) {
  MopsContainer c;
  for (const char* n : {"doc0", "doc1"}) c.documents.push_back({"f", n, fx.docs.at(n)});
  c.documents.push_back({"", "loose", fx.docs.at("doc2")});
  c.evidence["f"] = Protect(StructureKind::kMts, {"doc0", "doc1"}, true, fx.docs, fx.t0,
                            kH256, fx.tsa, fx.ctx);
  return c;
}

TEST(ContainerTest, RoundTripAndDeterminism) {
  Fixture fx;
  MopsContainer c = SampleContainer(fx);
  Bytes zip = ExportContainer(c);
  EXPECT_EQ(ExportContainer(c), zip);
  MopsContainer back = ImportContainer(zip);
  EXPECT_EQ(back.evidence, c.evidence);
  EXPECT_EQ(back.Folder("f").size(), 2u);
  auto folders = back.Folders();
  EXPECT_EQ(std::set<std::string>(folders.begin(), folders.end()),
            (std::set<std::string>{"", "f"}));
  EXPECT_EQ(ExportContainer(back), zip);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 10; ++i) {
    MopsContainer random = testing::RandomContainer(rng, fx);
    EXPECT_EQ(ExportContainer(ImportContainer(ExportContainer(random))),
              ExportContainer(random));
  }
}

TEST(ContainerTest, LayoutRules) {
  Fixture fx;
  MopsContainer c = SampleContainer(fx);
  std::vector<ZipEntry> entries = ReadZip(ExportContainer(c));

  auto without = [&](const std::string& name) {
    std::vector<ZipEntry> out;
    for (const ZipEntry& e : entries) {
      if (e.name != name) out.push_back(e);
    }
    return WriteZip(out);
  };
  EXPECT_EQ(CodeOf([&] { ImportContainer(without("f/doc0.sig.json")); }),
            Errc::kContainerMismatch);
  EXPECT_EQ(CodeOf([&] { ImportContainer(without("f/doc0")); }), Errc::kContainerMismatch);
  // Evidence naming a document that is not in its folder.
  EXPECT_EQ(CodeOf([&] {
              ImportContainer(without("f/doc1"));
            }),
            Errc::kContainerMismatch);

  std::vector<ZipEntry> tampered = entries;
  for (ZipEntry& e : tampered) {
    if (e.name == "f/doc1") e.content[0] ^= 1;
  }
  Bytes zip = WriteZip(tampered);
  EXPECT_EQ(CodeOf([&] { ImportContainer(zip); }), Errc::kContainerMismatch);
  MopsContainer lenient = ImportContainer(zip, ImportCheck::kLayoutOnly);
  EXPECT_EQ(lenient.Folder("f").size(), 2u);

  MopsContainer bad = c;
  bad.documents[0].name = "a/b";
  EXPECT_EQ(CodeOf([&] { ExportContainer(bad); }), Errc::kUsage);
  bad = c;
  bad.documents[0].name = "x.er.json";
  EXPECT_EQ(CodeOf([&] { ExportContainer(bad); }), Errc::kUsage);
  bad = c;
  bad.evidence[""] = c.evidence["f"];
  EXPECT_EQ(CodeOf([&] { ExportContainer(bad); }), Errc::kUsage);
}

TEST(ZipTest, RoundTripAndCorruption) {
  std::vector<ZipEntry> entries = {{"a.txt", ToBytes(std::string(5000, 'a'))},
                                   {"dir/b", Bytes{0, 1, 2, 3}},
                                   {"empty", {}}};
  Bytes zip = WriteZip(entries);
  EXPECT_EQ(ReadZip(zip), entries);
  EXPECT_LT(zip.size(), 1000u);
  Bytes flipped = zip;
  flipped[40] ^= 0xff;  // inside the first entry's compressed data
  EXPECT_EQ(CodeOf([&] { ReadZip(flipped); }), Errc::kParse);
  EXPECT_EQ(CodeOf([&] { ReadZip(ToBytes("not a zip archive at all, no")); }),
            Errc::kParse);
  EXPECT_EQ(CodeOf([&] { ReadZip(Bytes(zip.begin(), zip.begin() + zip.size() / 2)); }),
            Errc::kParse);
  EXPECT_EQ(CodeOf([&] { WriteZip({{"a", {}}, {"a", {}}}); }), Errc::kUsage);
}

}  // namespace
}  // namespace mops
