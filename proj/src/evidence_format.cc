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
#include "mops/evidence_format.h"

#include <set>

#include "json.hpp"
#include "mops/error.h"

namespace mops {

namespace {

using Json = nlohmann::ordered_json;

// ---- writing ---------------------------------------------------------------

Json Hex(ByteView b) { return HexEncode(b); }
Json Time(TimeInstant t) { return FormatTime(t); }

Json WriteRef(const CertificateRef& r) {
  Json j;
  j["subject"] = r.subject;
  j["serial"] = r.serial;
  return j;
}

Json WriteCertificate(const Certificate& c) {
  Json j;
  j["subject"] = c.subject;
  j["issuer"] = c.issuer.has_value() ? WriteRef(*c.issuer) : Json(nullptr);
  j["params"] = SignatureParamsName(c.params);
  j["public-key"] = Hex(c.public_key);
  j["not-before"] = Time(c.not_before);
  j["not-after"] = Time(c.not_after);
  j["serial"] = c.serial;
  j["signature"] = Hex(c.issuer_signature);
  return j;
}

Json WriteCrl(const Crl& c) {
  Json j;
  j["issuer"] = WriteRef(c.issuer);
  j["issued-at"] = Time(c.issued_at);
  j["revoked"] = c.revoked_serials;
  j["signature"] = Hex(c.signature);
  return j;
}

Json WriteVerification(const VerificationData& v) {
  Json j;
  j["leaf"] = WriteCertificate(v.leaf);
  j["issuer-chain"] = Json::array();
  for (const Certificate& c : v.issuer_chain) {
    j["issuer-chain"].push_back(WriteCertificate(c));
  }
  j["crls"] = Json::array();
  for (const Crl& c : v.crls) j["crls"].push_back(WriteCrl(c));
  j["collected-at"] = Time(v.collected_at);
  return j;
}

Json WriteAttestation(const Attestation& a) {
  Json j;
  j["issuer-kind"] = IssuerKindName(a.issuer_kind);
  j["hash"] = HashName(a.hash_fn);
  j["digest"] = Hex(a.attested_digest);
  j["time"] = Time(a.stated_time);
  j["issuer-cert"] = WriteRef(a.issuer_cert);
  j["signature"] = Hex(a.signature);
  return j;
}

Json WritePath(const AuthPath& p) {
  Json j;
  j["hash"] = HashName(p.hash_fn);
  j["leaf-index"] = p.leaf_index;
  j["siblings"] = Json::array();
  for (const Sibling& s : p.siblings) {
    j["siblings"].push_back(
        Json::array({s.side == Side::kLeft ? "L" : "R", HexEncode(s.digest)}));
  }
  return j;
}

Json WritePaths(const std::vector<AuthPath>& paths) {
  Json j = Json::array();
  for (const AuthPath& p : paths) j.push_back(WritePath(p));
  return j;
}

Json WriteItem(const Item& item) {
  Json j;
  j["kind"] = ItemKindName(item.kind);
  j["name"] = item.name;
  if (item.kind != ItemKind::kDocument || item.receipt != 0) {
    j["receipt"] = item.receipt;
  }
  return j;
}

Json WriteItems(const std::vector<Item>& items) {
  Json j = Json::array();
  for (const Item& i : items) j.push_back(WriteItem(i));
  return j;
}

Json WritePayload(const Payload& p) {
  Json j;
  j["items"] = WriteItems(p.items);
  j["batch"] = p.batch;
  if (!p.batch_root.empty()) j["batch-root"] = Hex(p.batch_root);
  if (!p.paths.empty()) j["paths"] = WritePaths(p.paths);
  return j;
}

Json WriteHashValue(const HashValue& h) {
  Json j;
  j["hash"] = HashName(h.hash_fn);
  j["value"] = Hex(h.value);
  return j;
}

Json WriteElement(const Element& e) {
  Json j;
  j["kind"] = ElementKindName(e.kind);
  j["attestation"] = WriteAttestation(e.attestation);
  if (e.verification) j["verification"] = WriteVerification(*e.verification);
  if (e.cumulation) j["cumulation"] = WritePath(*e.cumulation);
  if (e.payload) j["payload"] = WritePayload(*e.payload);
  if (!e.payload_digest.empty()) j["payload-digest"] = Hex(e.payload_digest);
  if (!e.slots.empty()) {
    Json slots = Json::array();
    for (const SlotProof& s : e.slots) {
      Json sj;
      if (!s.digest.empty()) sj["digest"] = Hex(s.digest);
      sj["path"] = WritePath(s.path);
      slots.push_back(std::move(sj));
    }
    j["slots"] = std::move(slots);
  }
  if (!e.links.empty()) {
    j["links"] = Json::array();
    for (const Bytes& l : e.links) j["links"].push_back(HexEncode(l));
  }
  return j;
}

Json WriteChain(const std::vector<Element>& chain) {
  Json j = Json::array();
  for (const Element& e : chain) j.push_back(WriteElement(e));
  return j;
}

Json WriteState(const EvidenceRecord& r) {
  Json j;
  if (const auto* as = std::get_if<AsState>(&r.state)) {
    j["payload"] = WritePayload(as->payload);
    j["chain"] = WriteChain(as->chain);
  } else if (const auto* mts = std::get_if<MtsState>(&r.state)) {
    j["items"] = WriteItems(mts->items);
    j["paths"] = Json::array();
    for (const auto& per_item : mts->paths) j["paths"].push_back(WritePaths(per_item));
    j["chain"] = WriteChain(mts->chain);
  } else if (const auto* seq = std::get_if<SequenceState>(&r.state)) {
    j["chain"] = WriteChain(seq->chain);
  } else {
    const auto& naw = std::get<NawState>(r.state);
    j["subject"] = WritePayload(naw.subject);
    j["certificates"] = Json::array();
    for (const Certificate& c : naw.certificates) {
      j["certificates"].push_back(WriteCertificate(c));
    }
    j["history"] = Json::array();
    for (const HashValue& h : naw.history) j["history"].push_back(WriteHashValue(h));
    if (!naw.item_paths.empty()) {
      j["item-paths"] = Json::array();
      for (const auto& per : naw.item_paths) j["item-paths"].push_back(WritePaths(per));
    }
    j["original-time"] = Time(naw.original_time);
    j["attestation"] = WriteAttestation(naw.attestation);
    if (naw.cumulation) j["cumulation"] = WritePath(*naw.cumulation);
  }
  return j;
}

std::string_view StateName(const EvidenceRecord& r) {
  switch (r.state.index()) {
    case 0: return "as";
    case 1: return "mts";
    case 2: return "sequence";
    default: return "naw";
  }
}

Json WriteRecord(const EvidenceRecord& r);

Json WriteReceipt(const MigrationReceipt& m) {
  Json j;
  j["source"] = StructureName(m.source_kind);
  j["target"] = StructureName(m.target_kind);
  j["migrated-at"] = Time(m.migrated_at);
  if (m.source_record.empty()) {
    j["source-record"] = nullptr;
  } else {
    // Embedded as a value; must be canonical so the stored text is recovered.
    EvidenceRecord inner = ParseRecord(std::string_view(m.source_record));
    if (SerializeRecord(inner) != m.source_record) {
      throw Error(Errc::kParse, "embedded source record is not canonical");
    }
    j["source-record"] = WriteRecord(inner);
  }
  if (m.source_head_verification) {
    j["source-head-verification"] =
        WriteVerification(*m.source_head_verification);
  }
  return j;
}

Json WriteRecord(const EvidenceRecord& r) {
  Json j;
  j["format-version"] = r.format_version;
  j["structure"] = StructureName(r.kind);
  j["attester"] = IssuerKindName(r.attester);
  j["created-at"] = Time(r.created_at);
  j["state-kind"] = StateName(r);
  j["state"] = WriteState(r);
  Json meta;
  meta["receipts"] = Json::array();
  for (const MigrationReceipt& m : r.receipts) meta["receipts"].push_back(WriteReceipt(m));
  j["metadata"] = std::move(meta);
  return j;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- reading ---------------------------------------------------------------

// A JSON value together with its pointer, for error messages.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(Errc::kParse, (path_.empty() ? "/" : path_) + ": " + what);
  }

  // Rejects keys outside the allowed set.
  const Node& Keys(std::initializer_list<std::string_view> allowed) const {
    if (!j_.is_object()) Fail("expected an object");
    for (const auto& [k, v] : j_.items()) {
      bool ok = false;
      for (std::string_view a : allowed) ok = ok || a == k;
      if (!ok) Fail("unexpected key '" + k + "'");
    }
    return *this;
  }

  bool Has(const char* key) const { return j_.is_object() && j_.contains(key); }

  Node operator[](const char* key) const {
    if (!j_.is_object()) Fail("expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) Fail(std::string("missing '") + key + "'");
    return Node(*it, path_ + "/" + key);
  }

  std::vector<Node> Array() const {
    if (!j_.is_array()) Fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_.size(); ++i) {
      out.emplace_back(j_[i], path_ + "/" + std::to_string(i));
    }
    return out;
  }

  bool IsNull() const { return j_.is_null(); }

  std::string Str() const {
    if (!j_.is_string()) Fail("expected a string");
    return j_.get<std::string>();
  }

  bool Bool() const {
    if (!j_.is_boolean()) Fail("expected a boolean");
    return j_.get<bool>();
  }

  std::uint64_t U64() const {
    if (!j_.is_number_unsigned()) Fail("expected an unsigned integer");
    return j_.get<std::uint64_t>();
  }

  std::uint32_t U32() const {
    std::uint64_t v = U64();
    if (v > 0xffffffffu) Fail("value out of range");
    return static_cast<std::uint32_t>(v);
  }

  // Wraps the module parsers so their errors carry this node's pointer.
  template <typename F>
  auto Convert(F&& f) const -> decltype(f(std::string())) {
    std::string s = Str();
    try {
      return f(s);
    } catch (const Error& e) {
      Fail(e.what());
    }
  }

  Bytes Hex() const {
    return Convert([](const std::string& s) {
      for (char c : s) {
        if (c >= 'A' && c <= 'F') throw Error(Errc::kParse, "uppercase hex");
      }
      return HexDecode(s);
    });
  }
  TimeInstant Time() const {
    return Convert([](const std::string& s) {
      TimeInstant t = ParseTime(s);
      if (FormatTime(t) != s) throw Error(Errc::kParse, "non-canonical time");
      return t;
    });
  }
  HashFunctionId HashFn() const {
    return Convert([](const std::string& s) { return ParseHashName(s); });
  }

  const Json& json() const { return j_; }

 private:
  const Json& j_;
  std::string path_;
};

CertificateRef ReadRef(const Node& n) {
  n.Keys({"subject", "serial"});
  return {n["subject"].Str(), n["serial"].U64()};
}

Certificate ReadCertificate(const Node& n) {
  n.Keys({"subject", "issuer", "params", "public-key", "not-before", "not-after",
          "serial", "signature"});
  Certificate c;
  c.subject = n["subject"].Str();
  Node issuer = n["issuer"];
  if (!issuer.IsNull()) c.issuer = ReadRef(issuer);
  c.params = n["params"].Convert(
      [](const std::string& s) { return ParseSignatureParams(s); });
  c.public_key = n["public-key"].Hex();
  c.not_before = n["not-before"].Time();
  c.not_after = n["not-after"].Time();
  c.serial = n["serial"].U64();
  c.issuer_signature = n["signature"].Hex();
  return c;
}

Crl ReadCrl(const Node& n) {
  n.Keys({"issuer", "issued-at", "revoked", "signature"});
  Crl c;
  c.issuer = ReadRef(n["issuer"]);
  c.issued_at = n["issued-at"].Time();
  for (const Node& s : n["revoked"].Array()) {
    std::uint64_t v = s.U64();
    if (!c.revoked_serials.empty() && v <= c.revoked_serials.back()) {
      s.Fail("revoked serials must be strictly increasing");
    }
    c.revoked_serials.push_back(v);
  }
  c.signature = n["signature"].Hex();
  return c;
}

VerificationData ReadVerification(const Node& n) {
  n.Keys({"leaf", "issuer-chain", "crls", "collected-at"});
  VerificationData v;
  v.leaf = ReadCertificate(n["leaf"]);
  for (const Node& c : n["issuer-chain"].Array()) {
    v.issuer_chain.push_back(ReadCertificate(c));
  }
  for (const Node& c : n["crls"].Array()) v.crls.push_back(ReadCrl(c));
  v.collected_at = n["collected-at"].Time();
  return v;
}

Attestation ReadAttestation(const Node& n) {
  n.Keys({"issuer-kind", "hash", "digest", "time", "issuer-cert", "signature"});
  Attestation a;
  a.issuer_kind = n["issuer-kind"].Convert(
      [](const std::string& s) { return ParseIssuerKind(s); });
  a.hash_fn = n["hash"].HashFn();
  a.attested_digest = n["digest"].Hex();
  a.stated_time = n["time"].Time();
  a.issuer_cert = ReadRef(n["issuer-cert"]);
  a.signature = n["signature"].Hex();
  return a;
}

AuthPath ReadPath(const Node& n) {
  n.Keys({"hash", "leaf-index", "siblings"});
  AuthPath p;
  p.hash_fn = n["hash"].HashFn();
  p.leaf_index = n["leaf-index"].U64();
  for (const Node& s : n["siblings"].Array()) {
    std::vector<Node> pair = s.Array();
    if (pair.size() != 2) s.Fail("sibling must be [side, digest]");
    std::string side = pair[0].Str();
    if (side != "L" && side != "R") pair[0].Fail("side must be L or R");
    p.siblings.push_back(
        {pair[1].Hex(), side == "L" ? Side::kLeft : Side::kRight});
  }
  return p;
}

std::vector<AuthPath> ReadPaths(const Node& n) {
  std::vector<AuthPath> out;
  for (const Node& p : n.Array()) out.push_back(ReadPath(p));
  return out;
}

Item ReadItem(const Node& n) {
  n.Keys({"kind", "name", "receipt"});
  Item item;
  item.kind =
      n["kind"].Convert([](const std::string& s) { return ParseItemKind(s); });
  item.name = n["name"].Str();
  if (n.Has("receipt")) {
    item.receipt = n["receipt"].U32();
    if (item.kind == ItemKind::kDocument && item.receipt == 0) {
      n["receipt"].Fail("redundant receipt index");
    }
  } else if (item.kind != ItemKind::kDocument) {
    n["receipt"];  // reports the missing key
  }
  return item;
}

std::vector<Item> ReadItems(const Node& n) {
  std::vector<Item> out;
  for (const Node& i : n.Array()) out.push_back(ReadItem(i));
  return out;
}

Payload ReadPayload(const Node& n) {
  n.Keys({"items", "batch", "batch-root", "paths"});
  Payload p;
  p.items = ReadItems(n["items"]);
  p.batch = n["batch"].Bool();
  if (n.Has("batch-root")) p.batch_root = n["batch-root"].Hex();
  if (n.Has("paths")) p.paths = ReadPaths(n["paths"]);
  return p;
}

Bytes NonEmptyHex(const Node& n) {
  Bytes b = n.Hex();
  if (b.empty()) n.Fail("empty value must be omitted");
  return b;
}

Element ReadElement(const Node& n) {
  n.Keys({"kind", "attestation", "verification", "cumulation", "payload",
          "payload-digest", "slots", "links"});
  Element e;
  e.kind = n["kind"].Convert(
      [](const std::string& s) { return ParseElementKind(s); });
  e.attestation = ReadAttestation(n["attestation"]);
  if (n.Has("verification")) e.verification = ReadVerification(n["verification"]);
  if (n.Has("cumulation")) e.cumulation = ReadPath(n["cumulation"]);
  if (n.Has("payload")) e.payload = ReadPayload(n["payload"]);
  if (n.Has("payload-digest")) e.payload_digest = NonEmptyHex(n["payload-digest"]);
  if (n.Has("slots")) {
    for (const Node& s : n["slots"].Array()) {
      s.Keys({"digest", "path"});
      SlotProof slot;
      if (s.Has("digest")) slot.digest = NonEmptyHex(s["digest"]);
      slot.path = ReadPath(s["path"]);
      e.slots.push_back(std::move(slot));
    }
    if (e.slots.empty()) n["slots"].Fail("empty list must be omitted");
  }
  if (n.Has("links")) {
    for (const Node& l : n["links"].Array()) e.links.push_back(l.Hex());
    if (e.links.empty()) n["links"].Fail("empty list must be omitted");
  }
  return e;
}

std::vector<Element> ReadChain(const Node& n) {
  std::vector<Element> out;
  for (const Node& e : n.Array()) out.push_back(ReadElement(e));
  return out;
}

EvidenceRecord ReadRecord(const Node& n);

MigrationReceipt ReadReceipt(const Node& n) {
  n.Keys({"source", "target", "migrated-at", "source-record",
          "source-head-verification"});
  MigrationReceipt m;
  auto kind = [](const std::string& s) { return ParseStructureName(s); };
  m.source_kind = n["source"].Convert(kind);
  m.target_kind = n["target"].Convert(kind);
  m.migrated_at = n["migrated-at"].Time();
  Node src = n["source-record"];
  if (!src.IsNull()) m.source_record = SerializeRecord(ReadRecord(src));
  if (n.Has("source-head-verification")) {
    m.source_head_verification =
        ReadVerification(n["source-head-verification"]);
  }
  return m;
}

EvidenceRecord ReadRecord(const Node& n) {
  n.Keys({"format-version", "structure", "attester", "created-at", "state-kind",
          "state", "metadata"});
  EvidenceRecord r;
  r.format_version = n["format-version"].U32();
  if (r.format_version != kFormatVersion) {
    n["format-version"].Fail("unsupported format version " +
                             std::to_string(r.format_version));
  }
  r.kind = n["structure"].Convert(
      [](const std::string& s) { return ParseStructureName(s); });
  r.attester = n["attester"].Convert(
      [](const std::string& s) { return ParseIssuerKind(s); });
  r.created_at = n["created-at"].Time();
  std::string state_kind = n["state-kind"].Str();
  Node s = n["state"];
  if (state_kind == "as") {
    s.Keys({"payload", "chain"});
    AsState as;
    as.payload = ReadPayload(s["payload"]);
    as.chain = ReadChain(s["chain"]);
    r.state = std::move(as);
  } else if (state_kind == "mts") {
    s.Keys({"items", "paths", "chain"});
    MtsState mts;
    mts.items = ReadItems(s["items"]);
    for (const Node& p : s["paths"].Array()) mts.paths.push_back(ReadPaths(p));
    mts.chain = ReadChain(s["chain"]);
    r.state = std::move(mts);
  } else if (state_kind == "sequence") {
    s.Keys({"chain"});
    r.state = SequenceState{ReadChain(s["chain"])};
  } else if (state_kind == "naw") {
    s.Keys({"subject", "certificates", "history", "item-paths", "original-time",
            "attestation", "cumulation"});
    NawState naw;
    naw.subject = ReadPayload(s["subject"]);
    for (const Node& c : s["certificates"].Array()) {
      naw.certificates.push_back(ReadCertificate(c));
    }
    for (const Node& h : s["history"].Array()) {
      h.Keys({"hash", "value"});
      naw.history.push_back({h["hash"].HashFn(), h["value"].Hex()});
    }
    if (s.Has("item-paths")) {
      for (const Node& p : s["item-paths"].Array()) {
        naw.item_paths.push_back(ReadPaths(p));
      }
      if (naw.item_paths.empty()) s["item-paths"].Fail("empty list must be omitted");
    }
    naw.original_time = s["original-time"].Time();
    naw.attestation = ReadAttestation(s["attestation"]);
    if (s.Has("cumulation")) naw.cumulation = ReadPath(s["cumulation"]);
    r.state = std::move(naw);
  } else {
    n["state-kind"].Fail("unknown state kind '" + state_kind + "'");
  }
  Node meta = n["metadata"];
  meta.Keys({"receipts"});
  for (const Node& m : meta["receipts"].Array()) r.receipts.push_back(ReadReceipt(m));
  return r;
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::kParse, std::string("malformed JSON at byte ") +
                                  std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace

std::string SerializeRecord(const EvidenceRecord& record) {
  return Dump(WriteRecord(record));
}

EvidenceRecord ParseRecord(std::string_view text) {
  Json j = ParseJson(text);
  return ReadRecord(Node(j, ""));
}

EvidenceRecord ParseRecord(ByteView bytes) {
  return ParseRecord(std::string_view(
      reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string SerializeSignature(const DocumentSignature& s) {
  Json j;
  j["format-version"] = kFormatVersion;
  j["method"] = s.method_id;
  j["doc-digest"] = WriteHashValue(s.doc_digest);
  j["signing-time"] = Time(s.signing_time);
  j["signer-cert"] = WriteCertificate(s.signer_cert);
  j["signature"] = Hex(s.signature_value);
  return Dump(j);
}

DocumentSignature ParseSignature(std::string_view text) {
  Json j = ParseJson(text);
  Node n(j, "");
  n.Keys({"format-version", "method", "doc-digest", "signing-time",
          "signer-cert", "signature"});
  if (n["format-version"].U32() != kFormatVersion) {
    n["format-version"].Fail("unsupported format version");
  }
  DocumentSignature s;
  s.method_id = n["method"].Str();
  Node d = n["doc-digest"];
  d.Keys({"hash", "value"});
  s.doc_digest = {d["hash"].HashFn(), d["value"].Hex()};
  s.signing_time = n["signing-time"].Time();
  s.signer_cert = ReadCertificate(n["signer-cert"]);
  s.signature_value = n["signature"].Hex();
  return s;
}

}  // namespace mops
