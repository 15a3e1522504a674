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
// mops: signing, protection, verification and simulation from the shell.
//
// Exit codes: 0 success / valid, 1 operation or verification failed,
// 2 usage, 3 service unreachable or misbehaving.

#include <csignal>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <set>
#include <thread>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mops/combine.h"
#include "mops/container.h"
#include "mops/error.h"
#include "mops/evidence_format.h"
#include "mops/migrate.h"
#include "mops/service.h"
#include "mops/simulation.h"
#include "mops/structures.h"
#include "mops/verify.h"
#include "mops/wizard.h"
#include "mops/world.h"

namespace fs = std::filesystem;
using namespace mops;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitService = 3;

int ExitCodeFor(Errc code) {
  switch (code) {
    case Errc::kUsage:
    case Errc::kIncompatible:
      return kExitUsage;
    case Errc::kTransport:
    case Errc::kUnknownEndpoint:
    case Errc::kMalformedMessage:
    case Errc::kStorage:
    case Errc::kUnknownHandle:
      return kExitService;
    default:
      return kExitFailed;
  }
}

Bytes ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::kUsage, "cannot read " + p.string());
  return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void WriteFile(const fs::path& p, ByteView data) {
  const fs::path tmp = p.string() + ".part";
  {
    std::ofstream out(tmp, std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(Errc::kUsage, "cannot write " + p.string());
  }
  fs::rename(tmp, p);
}

MopsContainer LoadContainer(const fs::path& p,
                            ImportCheck check = ImportCheck::kStrict) {
  try {
    return ImportContainer(ReadFile(p), check);
  } catch (const Error& e) {
    throw Error(e.code(), p.string() + ": " + e.detail());
  }
}

// Options shared by most commands.
struct Common {
  std::string clock;
  std::uint64_t seed = 1;
  std::string hash;
  std::string endpoint;
  std::string inventory;
  int threshold = 30;

  TimeInstant Clock() const {
    if (!clock.empty()) return ParseTime(clock);
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    return {std::chrono::duration_cast<std::chrono::seconds>(now).count()};
  }
};

struct Env {
  explicit Env(const Common& c)
      : world(WorldConfig{c.seed}),
        inventory(c.inventory.empty()
                      ? DefaultLenstraInventory()
                      : SecurityInventory::ParseText(ToString(ReadFile(c.inventory)))),
        ctx{world, inventory},
        clock(c.Clock()),
        common(c) {}

  // The attester for a scheme: in-process, or remote when --endpoint is set.
  Attester& AttesterFor(IssuerKind kind) {
    if (common.endpoint.empty()) {
      if (kind == IssuerKind::kTsa) {
        if (!tsa) tsa = std::make_unique<TimestampAuthority>(world);
        return *tsa;
      }
      if (!na) na = std::make_unique<NotarialAuthority>(world, inventory);
      return *na;
    }
    if (!transport) transport = std::make_unique<TcpTransport>(common.endpoint);
    remote = std::make_unique<RemoteAttester>(*transport, kind);
    return *remote;
  }

  HashFunctionId HashFor(HashFunctionId current) const {
    if (!common.hash.empty()) return ParseHashName(common.hash);
    return SelectHash(inventory, current, clock, common.threshold);
  }

  PkiWorld world;
  SecurityInventory inventory;
  ProtectContext ctx;
  TimeInstant clock;
  const Common& common;
  std::unique_ptr<TimestampAuthority> tsa;
  std::unique_ptr<NotarialAuthority> na;
  std::unique_ptr<TcpTransport> transport;
  std::unique_ptr<RemoteAttester> remote;
};

void AddCommon(CLI::App* cmd, Common& c, bool attesting) {
  cmd->add_option("--clock", c.clock, "Simulated time (YYYY-MM-DD or ISO-8601 UTC)");
  cmd->add_option("--seed", c.seed, "PKI world seed")->capture_default_str();
  cmd->add_option("--inventory", c.inventory, "Security inventory file");
  if (attesting) {
    cmd->add_option("--hash", c.hash, "Hash function (default: per inventory)");
    cmd->add_option("--endpoint", c.endpoint, "Attestation service host:port");
    cmd->add_option("--threshold", c.threshold, "Renewal threshold in days")
        ->capture_default_str();
  }
}

// Scheme selection shared by protect, migrate and import.
struct SchemeOptions {
  std::string structure;
  std::string attester;
  std::string retrieval;
  std::string storage;
  std::string trust;
  bool batch = false;
  bool cumulate = false;

  void Add(CLI::App* cmd) {
    cmd->add_option("--structure", structure, "AS, MTS, MDS, SLS or NAW");
    cmd->add_option("--attester", attester, "TSA or NA (default: NA for NAW)");
    cmd->add_option("--retrieval", retrieval, "Wizard: single, ranges or all");
    cmd->add_option("--storage", storage, "Wizard: few, sets or sequential");
    cmd->add_option("--trust", trust, "Wizard: accepts-na or minimal");
    cmd->add_flag("--batch", batch, "One element over all documents");
    cmd->add_flag("--cumulate", cumulate, "One record per document, shared attestations");
  }

  SchemeConfig Resolve(const Common& c) const {
    SchemeConfig s;
    const bool wizard = !retrieval.empty() || !storage.empty() || !trust.empty();
    if (wizard) {
      if (retrieval.empty() || storage.empty() || trust.empty() || !structure.empty()) {
        throw Error(Errc::kUsage,
                    "the wizard needs --retrieval, --storage and --trust, and no --structure");
      }
      s = WizardSelect({ParseRetrieval(retrieval), ParseStorage(storage), ParseTrust(trust)});
    } else {
      if (structure.empty()) throw Error(Errc::kUsage, "--structure or the wizard options are required");
      s.structure = ParseStructureName(structure);
      s.attester = s.structure == StructureKind::kNaw ? IssuerKind::kNa : IssuerKind::kTsa;
      s.batch = batch;
      s.cumulate = cumulate;
    }
    if (!attester.empty()) s.attester = ParseIssuerKind(attester);
    s.endpoint = c.endpoint;
    s.renewal_threshold_days = c.threshold;
    ValidateScheme(s);
    return s;
  }
};

// Documents of signature-only containers (no evidence anywhere).
std::vector<ContainerDocument> SignedInputs(const std::vector<std::string>& files) {
  std::vector<ContainerDocument> out;
  std::set<std::string> names;
  for (const std::string& f : files) {
    MopsContainer c = LoadContainer(f);
    if (!c.evidence.empty()) {
      throw Error(Errc::kUsage, f + " already holds evidence; use 'mops import'");
    }
    for (ContainerDocument& d : c.documents) {
      if (!names.insert(d.name).second) {
        throw Error(Errc::kUsage, "document name '" + d.name + "' given twice");
      }
      out.push_back(std::move(d));
    }
  }
  return out;
}

// Protects documents in folder under the scheme, adding folders to out.
void ProtectInto(MopsContainer& out, const std::string& folder,
                 std::vector<ContainerDocument> docs, const SchemeConfig& s, Env& env) {
  HashFunctionId h = env.common.hash.empty() ? env.HashFor(HashFunctionId::kSha256)
                                             : ParseHashName(env.common.hash);
  Attester& attester = env.AttesterFor(s.attester);
  DocumentSet set;
  std::vector<std::string> names;
  for (const ContainerDocument& d : docs) {
    set.emplace(d.name, d.data);
    names.push_back(d.name);
  }
  if (s.cumulate) {
    std::vector<Proposal> proposals;
    for (const std::string& n : names) {
      proposals.push_back(ProposeInit(s.structure, s.attester, DocumentItems({n}), false, h,
                                      env.clock, set, env.ctx));
    }
    std::vector<EvidenceRecord> records = CumulateAttest(std::move(proposals), attester, env.clock);
    for (std::size_t i = 0; i < names.size(); ++i) {
      out.documents.push_back({names[i], names[i], docs[i].data});
      out.evidence[names[i]] = std::move(records[i]);
    }
    return;
  }
  const bool batch = s.batch || (names.size() > 1 && s.structure != StructureKind::kMts &&
                                 s.structure != StructureKind::kMds &&
                                 s.structure != StructureKind::kSls);
  EvidenceRecord r = batch && s.structure != StructureKind::kAs
                         ? AttachDocset(std::nullopt, s.structure, names, env.clock, h, set,
                                        attester, env.ctx)
                         : Protect(s.structure, names, batch, set, env.clock, h, attester, env.ctx);
  for (ContainerDocument& d : docs) out.documents.push_back({folder, d.name, std::move(d.data)});
  out.evidence[folder] = std::move(r);
}

// Moves one folder's record under the scheme. NAW targets are batched so the
// folder keeps a single evidence file.
EvidenceRecord MigrateFolder(const EvidenceRecord& source, const DocumentSet& docs,
                             const SchemeConfig& s, Env& env) {
  const HashFunctionId h = env.HashFor(HeadHash(source));
  Attester& attester = env.AttesterFor(s.attester);
  if (s.structure == StructureKind::kNaw) {
    std::vector<EvidenceRecord> out =
        MigrateToNaw(source, env.clock, h, docs, attester, env.ctx, docs.size() > 1);
    return std::move(out.front());
  }
  return MigrateToSequence(source, s.structure, std::nullopt, env.clock, h, docs, attester,
                           env.ctx);
}

std::string Pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

// --- commands ----------------------------------------------------------------

int CmdSign(const std::vector<std::string>& files, const std::string& out_dir,
            const std::string& signer, const Common& c) {
  Env env(c);
  const HashFunctionId h = env.HashFor(HashFunctionId::kSha256);
  for (const std::string& f : files) {
    const Bytes content = ReadFile(f);
    PkiWorld::Credential cred = env.world.LeafCredential(signer, h, env.clock);
    MopsContainer mc;
    const std::string name = fs::path(f).filename().string();
    mc.documents.push_back(
        {"", name, {content, SignDocument(content, cred.key, cred.certificate, h, env.clock)}});
    const fs::path dest = (out_dir.empty() ? fs::path(f).parent_path() : fs::path(out_dir)) /
                          (name + std::string(kContainerExtension));
    WriteFile(dest, ExportContainer(mc));
    std::cout << dest.string() << "\n";
  }
  return kExitOk;
}

int CmdProtect(const std::vector<std::string>& inputs, const std::string& folder,
               const std::string& out, const SchemeOptions& so, const Common& c) {
  Env env(c);
  const SchemeConfig s = so.Resolve(c);
  MopsContainer mc;
  ProtectInto(mc, folder, SignedInputs(inputs), s, env);
  WriteFile(out, ExportContainer(mc));
  std::cout << DescribeScheme(s) << "\n" << out << "\n";
  return kExitOk;
}

int CmdAdd(const std::string& archive, const std::vector<std::string>& inputs,
           const std::string& folder, bool batch, const std::string& out, const Common& c) {
  Env env(c);
  MopsContainer mc = LoadContainer(archive);
  auto it = mc.evidence.find(folder);
  if (it == mc.evidence.end()) throw Error(Errc::kUsage, "no evidence for folder '" + folder + "'");
  EvidenceRecord& r = it->second;
  if (r.kind != StructureKind::kMds && r.kind != StructureKind::kSls) {
    throw Error(Errc::kIncompatible, std::string(StructureName(r.kind)) +
                                         " records do not grow; migrate to MDS or SLS first");
  }
  std::vector<ContainerDocument> added = SignedInputs(inputs);
  DocumentSet set = mc.Folder(folder);
  std::vector<std::string> names;
  for (ContainerDocument& d : added) {
    if (!set.emplace(d.name, d.data).second) {
      throw Error(Errc::kUsage, "folder already holds '" + d.name + "'");
    }
    names.push_back(d.name);
    mc.documents.push_back({folder, d.name, std::move(d.data)});
  }
  const HashFunctionId h = env.HashFor(HeadHash(r));
  Attester& attester = env.AttesterFor(r.attester);
  if (batch && names.size() > 1) {
    r = AttachDocset(r, r.kind, names, env.clock, h, set, attester, env.ctx);
  } else {
    for (const std::string& n : names) r = AddDocument(r, n, env.clock, h, set, attester, env.ctx);
  }
  WriteFile(out.empty() ? archive : out, ExportContainer(mc));
  return kExitOk;
}

int CmdRenew(const std::string& archive, bool if_due, const std::string& out, const Common& c) {
  Env env(c);
  MopsContainer mc = LoadContainer(archive);
  for (auto& [folder, r] : mc.evidence) {
    const HashFunctionId h = env.HashFor(HeadHash(r));
    const TimeInstant end = HeadValidityEnd(r, env.ctx, env.clock);
    if (if_due && h == HeadHash(r) && env.clock < AddDays(end, -c.threshold)) {
      std::cout << folder << ": not due (valid until " << FormatTime(end) << ")\n";
      continue;
    }
    r = Renew(r, env.clock, h, mc.Folder(folder), env.AttesterFor(r.attester), env.ctx);
    std::cout << folder << ": renewed with " << HashName(h) << "\n";
  }
  WriteFile(out.empty() ? archive : out, ExportContainer(mc));
  return kExitOk;
}

int CmdMigrate(const std::string& archive, const std::vector<std::string>& folders,
               const std::string& out, const SchemeOptions& so, const Common& c) {
  Env env(c);
  const SchemeConfig s = so.Resolve(c);
  if (s.cumulate || s.batch) throw Error(Errc::kUsage, "migrate takes a plain structure");
  MopsContainer mc = LoadContainer(archive);
  for (auto& [folder, r] : mc.evidence) {
    if (!folders.empty() && std::find(folders.begin(), folders.end(), folder) == folders.end()) {
      continue;
    }
    r = MigrateFolder(r, mc.Folder(folder), s, env);
    std::cout << folder << ": migrated to " << StructureName(s.structure) << "\n";
  }
  WriteFile(out.empty() ? archive : out, ExportContainer(mc));
  return kExitOk;
}

int CmdVerify(const std::string& archive, bool quiet, const Common& c) {
  Env env(c);
  MopsContainer mc = LoadContainer(archive, ImportCheck::kLayoutOnly);
  VerifyOptions o;
  o.at = env.clock;
  bool all = true;
  std::vector<std::vector<std::string>> rows;
  for (const ContainerDocument& d : mc.documents) {
    const bool covered = !d.folder.empty() && mc.evidence.count(d.folder);
    if (!covered && !VerifyDocumentSignature(d.data.document, d.data.signature)) {
      all = false;
      rows.push_back({d.folder.empty() ? "-" : d.folder, d.name, "INVALID",
                      std::string(CategoryName(Category::kSignatureInvalid)),
                      "document does not match its signature"});
    }
    if (!covered) {
      all = false;
      rows.push_back({d.folder.empty() ? "-" : d.folder, d.name, "INVALID", "missing-data",
                      "no proof of existence"});
    }
  }
  for (const auto& [folder, r] : mc.evidence) {
    const Verdict v = VerifyProof(r, mc.Folder(folder), env.world, env.inventory, o);
    all = all && v.valid;
    for (const DocumentVerdict& d : v.documents) {
      if (d.valid) {
        rows.push_back({folder, d.name, "VALID", "-",
                        std::to_string(d.attestations_checked) + " attestation(s) checked"});
      }
      for (const Diagnostic& g : d.diagnostics) {
        rows.push_back({folder, d.name, "INVALID", std::string(CategoryName(g.category)), g.detail});
      }
    }
    for (const Diagnostic& g : v.record_diagnostics) {
      rows.push_back({folder, "*", "INVALID", std::string(CategoryName(g.category)), g.detail});
    }
  }
  if (!quiet) {
    std::size_t w[4] = {6, 8, 7, 8};
    for (const auto& row : rows) {
      for (int i = 0; i < 4; ++i) w[i] = std::max(w[i], row[i].size());
    }
    std::cout << Pad("FOLDER", w[0]) << "  " << Pad("DOCUMENT", w[1]) << "  "
              << Pad("RESULT", w[2]) << "  " << Pad("CATEGORY", w[3]) << "  DETAIL\n";
    for (const auto& row : rows) {
      std::cout << Pad(row[0], w[0]) << "  " << Pad(row[1], w[1]) << "  " << Pad(row[2], w[2])
                << "  " << Pad(row[3], w[3]) << "  " << row[4] << "\n";
    }
  }
  std::cout << (all ? "result: valid" : "result: INVALID") << " at " << FormatTime(env.clock)
            << "\n";
  return all ? kExitOk : kExitFailed;
}

int CmdExport(const std::string& archive, const std::vector<std::string>& folders,
              const std::string& out) {
  MopsContainer in = LoadContainer(archive);
  MopsContainer mc;
  std::set<std::string> want(folders.begin(), folders.end());
  for (const std::string& f : want) {
    if (!in.evidence.count(f) && in.Folder(f).empty()) {
      throw Error(Errc::kUsage, "no folder '" + f + "' in " + archive);
    }
  }
  for (const ContainerDocument& d : in.documents) {
    if (want.empty() || want.count(d.folder)) mc.documents.push_back(d);
  }
  for (const auto& [f, r] : in.evidence) {
    if (want.empty() || want.count(f)) mc.evidence.emplace(f, r);
  }
  WriteFile(out, ExportContainer(mc));
  std::cout << out << "\n";
  return kExitOk;
}

int CmdImport(const std::vector<std::string>& inputs, const std::string& out,
              const SchemeOptions& so, const Common& c) {
  Env env(c);
  std::optional<SchemeConfig> s;
  if (!so.structure.empty() || !so.retrieval.empty()) s = so.Resolve(c);
  MopsContainer merged;
  for (const std::string& f : inputs) {
    MopsContainer mc = LoadContainer(f);
    for (const auto& [folder, r] : mc.evidence) {
      if (merged.evidence.count(folder)) {
        throw Error(Errc::kUsage, "folder '" + folder + "' appears in several inputs");
      }
      const DocumentSet docs = mc.Folder(folder);
      VerifyOptions o;
      o.at = env.clock;
      if (!VerifyProof(r, docs, env.world, env.inventory, o).valid) {
        throw Error(Errc::kInvalidSource, f + ": folder '" + folder + "' does not verify");
      }
      EvidenceRecord next = r;
      if (s && (s->structure != r.kind || s->attester != r.attester)) {
        next = MigrateFolder(r, docs, *s, env);
        std::cout << folder << ": migrated to " << StructureName(s->structure) << "\n";
      }
      const HashFunctionId h = env.HashFor(HeadHash(next));
      if (h != HeadHash(next) ||
          env.clock >= AddDays(HeadValidityEnd(next, env.ctx, env.clock), -c.threshold)) {
        next = Renew(next, env.clock, h, docs, env.AttesterFor(next.attester), env.ctx);
        std::cout << folder << ": updated\n";
      }
      merged.evidence.emplace(folder, std::move(next));
    }
    for (ContainerDocument& d : mc.documents) merged.documents.push_back(std::move(d));
  }
  WriteFile(out, ExportContainer(merged));
  std::cout << out << "\n";
  return kExitOk;
}

int CmdSimulate(const std::string& structure, int years, const std::string& out,
                const Common& c) {
  SimulationConfig sc;
  sc.structure = ParseStructureName(structure);
  sc.years = years;
  sc.seed = c.seed;
  sc.renewal_threshold_days = c.threshold;
  if (!c.clock.empty()) sc.start = ParseTime(c.clock);
  const auto t0 = std::chrono::steady_clock::now();
  const SimulationReport rep = Simulate(sc);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0).count();
  const std::string text = rep.ToText();
  if (out.empty()) {
    std::cout << text;
  } else {
    WriteFile(out, ToBytes(text));
  }
  std::cerr << "simulated " << years << " years in " << ms << " ms\n";
  return rep.all_valid && rep.scenario_valid ? kExitOk : kExitFailed;
}

int CmdWizard(const SchemeOptions& so, const Common& c) {
  std::cout << DescribeScheme(so.Resolve(c)) << "\n";
  return kExitOk;
}

volatile std::sig_atomic_t g_stop = 0;

int CmdServe(const std::string& listen, const std::string& store_dir, const Common& c) {
  Env env(c);
  TimestampAuthority tsa(env.world);
  NotarialAuthority na(env.world, env.inventory);
  FolderStore store(store_dir);
  ServiceProviders p;
  p.tsa = &tsa;
  p.na = &na;
  p.inventory = &env.inventory;
  p.store = &store;
  if (!c.clock.empty()) {
    const TimeInstant fixed = env.clock;
    p.clock = [fixed] { return fixed; };
  }
  ServiceHost host(p);
  TcpServer server(host.Handler(), listen);
  std::signal(SIGINT, [](int) { g_stop = 1; });
  std::signal(SIGTERM, [](int) { g_stop = 1; });
  std::cout << "listening on " << server.endpoint() << std::endl;
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.Stop();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mops: modular protection of signed documents"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mops 1.0");

  Common c;
  SchemeOptions so;
  std::vector<std::string> files;
  std::vector<std::string> folders;
  std::string out, folder = "folder", archive, signer = "signer", listen = "127.0.0.1:0",
               store = "mops-store", structure;
  bool batch = false, if_due = false, quiet = false;
  int years = 100;

  auto* sign = app.add_subcommand("sign", "Sign files into .mops.zip containers");
  sign->add_option("files", files, "Files to sign")->required();
  sign->add_option("--out", out, "Output directory (default: next to each file)");
  sign->add_option("--signer", signer, "Signer entity")->capture_default_str();
  AddCommon(sign, c, true);

  auto* protect = app.add_subcommand("protect", "Protect signed documents in a new archive");
  protect->add_option("inputs", files, "Signed .mops.zip containers")->required();
  protect->add_option("--folder", folder, "Folder name")->capture_default_str();
  protect->add_option("--out", out, "Output archive")->required();
  so.Add(protect);
  AddCommon(protect, c, true);

  auto* add = app.add_subcommand("add", "Add signed documents to an MDS/SLS folder");
  add->add_option("archive", archive, "Protected archive")->required();
  add->add_option("inputs", files, "Signed .mops.zip containers")->required();
  add->add_option("--folder", folder, "Folder name")->capture_default_str();
  add->add_flag("--batch", batch, "Attach all documents under one attestation");
  add->add_option("--out", out, "Output archive (default: in place)");
  AddCommon(add, c, true);

  auto* renew = app.add_subcommand("renew", "Renew every folder's evidence");
  renew->add_option("archive", archive, "Protected archive")->required();
  renew->add_flag("--if-due", if_due, "Skip folders outside the renewal threshold");
  renew->add_option("--out", out, "Output archive (default: in place)");
  AddCommon(renew, c, true);

  auto* migrate = app.add_subcommand("migrate", "Move evidence to another scheme");
  migrate->add_option("archive", archive, "Protected archive")->required();
  migrate->add_option("--only", folders, "Folders to migrate (default: all)");
  migrate->add_option("--out", out, "Output archive (default: in place)");
  so.Add(migrate);
  AddCommon(migrate, c, true);

  auto* verify = app.add_subcommand("verify", "Verify an archive; prints a verdict table");
  verify->add_option("archive", archive, "Archive to verify")->required();
  verify->add_flag("--quiet", quiet, "Print only the result line");
  AddCommon(verify, c, false);

  auto* exp = app.add_subcommand("export", "Copy folders into a new archive");
  exp->add_option("archive", archive, "Source archive")->required();
  exp->add_option("--only", folders, "Folders to export (default: all)");
  exp->add_option("--out", out, "Output archive")->required();

  auto* imp = app.add_subcommand("import", "Merge archives, migrating and updating their evidence");
  imp->add_option("inputs", files, "Archives to import")->required();
  imp->add_option("--out", out, "Output archive")->required();
  so.Add(imp);
  AddCommon(imp, c, true);

  auto* sim = app.add_subcommand("simulate", "Run the long-term simulation");
  sim->add_option("--structure", structure, "AS, MTS, MDS, SLS or NAW")->required();
  sim->add_option("--years", years, "Years to simulate")->capture_default_str();
  sim->add_option("--out", out, "Report file (default: stdout)");
  AddCommon(sim, c, true);

  auto* wiz = app.add_subcommand("wizard", "Show the scheme the wizard selects");
  so.Add(wiz);

  auto* serve = app.add_subcommand("serve", "Run TSA, NA, information and storage services");
  serve->add_option("--listen", listen, "host:port to listen on")->capture_default_str();
  serve->add_option("--store", store, "Storage folder")->capture_default_str();
  AddCommon(serve, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sign) return CmdSign(files, out, signer, c);
    if (*protect) return CmdProtect(files, folder, out, so, c);
    if (*add) return CmdAdd(archive, files, folder, batch, out, c);
    if (*renew) return CmdRenew(archive, if_due, out, c);
    if (*migrate) return CmdMigrate(archive, folders, out, so, c);
    if (*verify) return CmdVerify(archive, quiet, c);
    if (*exp) return CmdExport(archive, folders, out);
    if (*imp) return CmdImport(files, out, so, c);
    if (*sim) return CmdSimulate(structure, years, out, c);
    if (*wiz) return CmdWizard(so, c);
    if (*serve) return CmdServe(listen, store, c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
