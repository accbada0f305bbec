// Copyright 2026 The pihvc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "pihvc/cli/cli.h"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "pihvc/cli/bench.h"
#include "pihvc/ledger/issuance.h"
#include "pihvc/ledger/ledger.h"
#include "pihvc/protocol/protocol.h"
#include "pihvc/util/random.h"
#include "pihvc/util/status_macros.h"

namespace pihvc::cli {
namespace {

using json = nlohmann::json;

constexpr size_t kSeedBytes = 32;

struct Globals {
  std::string ledger = "pihvc.ledger";
  std::string seed;  // hex, optional
};

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) return absl::UnavailableError(absl::StrCat("read failed: ", path));
  return s.str();
}

// Writes next to `path` and renames over it.
absl::Status WriteFileAtomic(const std::string& path, std::string_view data) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      return absl::UnavailableError(absl::StrCat("cannot write ", tmp));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return absl::UnavailableError(absl::StrCat("cannot replace ", path));
  }
  return absl::OkStatus();
}

std::string IssuerSetPath(const std::string& ledger) {
  return ledger + ".auditor";
}

// Live randomness unless a seed is given; seeded commands fork per command
// and ledger length so repeated runs reproduce byte for byte.
absl::StatusOr<std::unique_ptr<RandomSource>> MakeRng(const Globals& g,
                                                      std::string_view label,
                                                      size_t log_size) {
  if (g.seed.empty()) return std::make_unique<SystemRandom>();
  ASSIGN_OR_RETURN(Bytes seed, HexDecode(g.seed));
  if (seed.size() != kSeedBytes) {
    return absl::InvalidArgumentError("--seed must be 64 hex digits");
  }
  return std::make_unique<SeededRandom>(
      SeededRandom(seed).Fork(absl::StrCat(std::string(label), "/", log_size)));
}

absl::StatusOr<Ledger> LoadLedger(const std::string& path,
                                  ReplayMode mode = ReplayMode::kStructure) {
  if (!std::filesystem::exists(path)) {
    return absl::FailedPreconditionError(
        absl::StrCat("no ledger at ", path, "; run setup first"));
  }
  ASSIGN_OR_RETURN(std::string file, ReadFile(path));
  ASSIGN_OR_RETURN(std::optional<Ledger> ledger, Ledger::Replay(file, mode));
  if (!ledger.has_value()) {
    return absl::FailedPreconditionError(
        absl::StrCat("ledger ", path, " is empty"));
  }
  return *std::move(ledger);
}

absl::StatusOr<IssuerSetState> LoadIssuerSet(const std::string& ledger_path,
                                             const Ledger& ledger) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(IssuerSetPath(ledger_path)));
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.contains("issuer_set") ||
      !j["issuer_set"].is_string()) {
    return absl::DataLossError("issuer set file is malformed");
  }
  ASSIGN_OR_RETURN(Bytes bytes, HexDecode(j["issuer_set"].get<std::string>()));
  absl::StatusOr<IssuerSetState> set =
      IssuerSetState::Deserialize(ledger.pp(), bytes);
  if (!set.ok()) {
    return absl::DataLossError(
        absl::StrCat("issuer set file: ", set.status().message()));
  }
  if (set->acc() != ledger.issuer_acc()) {
    return absl::DataLossError(
        "issuer set file does not match the ledger's issuer accumulator");
  }
  return set;
}

std::string IssuerSetJson(const IssuerSetState& set) {
  return json{{"issuer_set", HexEncode(set.Serialize())}}.dump(2) + "\n";
}

// The ledger goes last: a failure before it leaves the ledger untouched.
absl::Status SaveState(const std::string& ledger_path, const Ledger& ledger,
                       const IssuerSetState* set) {
  if (set != nullptr) {
    RETURN_IF_ERROR(
        WriteFileAtomic(IssuerSetPath(ledger_path), IssuerSetJson(*set)));
  }
  return WriteFileAtomic(ledger_path, ledger.Persist());
}

std::string AttributesText(const Attributes& attrs) {
  std::string out;
  for (const auto& [name, value] : attrs.entries()) {
    if (!out.empty()) out += ",";
    absl::StrAppend(&out, name, "=", ToString(value));
  }
  return out;
}

struct Credential {
  VcRecord record;
  std::string holder;
  Commitment opening;
};

std::string CredentialJson(const Credential& c) {
  return json{{"holder", c.holder},
              {"record", HexEncode(c.record.Serialize())},
              {"attributes", AttributesText(c.opening.attrs)},
              {"randomness", HexEncode(c.opening.randomness)}}
             .dump(2) +
         "\n";
}

absl::StatusOr<Credential> LoadCredential(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  for (const char* key : {"holder", "record", "attributes", "randomness"}) {
    if (j.is_discarded() || !j.contains(key) || !j[key].is_string()) {
      return absl::InvalidArgumentError(
          absl::StrCat("credential ", path, ": missing ", key));
    }
  }
  Credential c;
  c.holder = j["holder"].get<std::string>();
  ASSIGN_OR_RETURN(Bytes record, HexDecode(j["record"].get<std::string>()));
  ASSIGN_OR_RETURN(c.record, VcRecord::Deserialize(record));
  ASSIGN_OR_RETURN(c.opening.attrs,
                   Attributes::Parse(j["attributes"].get<std::string>()));
  ASSIGN_OR_RETURN(c.opening.randomness,
                   HexDecode(j["randomness"].get<std::string>()));
  c.opening.value = c.record.commitment;
  return c;
}

int Fail(const absl::Status& status, std::ostream& err) {
  err << "error: " << status.message() << "\n";
  return status.code() == absl::StatusCode::kDataLoss ? kExitCorrupt
                                                      : kExitUsage;
}

struct SetupArgs {
  std::string mode = "toy";
  int security = 128;
  int height = 20;
  size_t modulus_bits = 0;
  std::string backend = std::string(AlgebraicBackend::kName);
  std::string reuse = "never";
  std::vector<std::string> issuers;
  bool force = false;
};

absl::StatusOr<RsaMode> ParseMode(const std::string& mode) {
  if (mode == "toy") return RsaMode::kToy;
  if (mode == "production") return RsaMode::kProduction;
  return absl::InvalidArgumentError("--mode must be toy or production");
}

absl::Status DoSetup(const Globals& g, const SetupArgs& a, std::ostream& out) {
  if (!a.force && std::filesystem::exists(g.ledger)) {
    return absl::AlreadyExistsError(
        absl::StrCat(g.ledger, " exists; pass --force to replace it"));
  }
  ASSIGN_OR_RETURN(RsaMode mode, ParseMode(a.mode));
  SlotReuse reuse;
  if (a.reuse == "never") {
    reuse = SlotReuse::kNever;
  } else if (a.reuse == "lowest-free") {
    reuse = SlotReuse::kLowestFree;
  } else {
    return absl::InvalidArgumentError("--reuse must be never or lowest-free");
  }
  ASSIGN_OR_RETURN(std::unique_ptr<RandomSource> rng, MakeRng(g, "setup", 0));
  ASSIGN_OR_RETURN(PublicParams pp,
                   Setup(a.security, {mode, a.modulus_bits, a.backend}, *rng));
  ASSIGN_OR_RETURN(IssuerSetState set, CreateIssuerSet(pp, a.issuers, *rng));
  ASSIGN_OR_RETURN(Ledger ledger,
                   Ledger::Genesis(pp, a.height, reuse, set.acc()));
  RETURN_IF_ERROR(SaveState(g.ledger, ledger, &set));
  out << "ledger " << g.ledger << ": genesis, " << pp.rsa.modulus_bits
      << "-bit modulus, height " << a.height << ", " << set.members.size()
      << " issuers\n";
  return absl::OkStatus();
}

absl::Status DoIssuerUpdate(const Globals& g, bool add,
                            const std::vector<std::string>& dids,
                            std::ostream& out) {
  ASSIGN_OR_RETURN(Ledger ledger, LoadLedger(g.ledger));
  ASSIGN_OR_RETURN(IssuerSetState set, LoadIssuerSet(g.ledger, ledger));
  ASSIGN_OR_RETURN(std::unique_ptr<RandomSource> rng,
                   MakeRng(g, "issuer", ledger.log().size()));
  const std::vector<std::string> none;
  ASSIGN_OR_RETURN(IssuerSetState next,
                   UpdateIssuers(ledger.pp(), set, add ? none : dids,
                                 add ? dids : none, ledger, *rng));
  RETURN_IF_ERROR(SaveState(g.ledger, ledger, &next));
  out << (add ? "added " : "removed ") << dids.size() << " issuer(s); "
      << next.members.size() << " in the set\n";
  return absl::OkStatus();
}

absl::Status DoIssuerList(const Globals& g, std::ostream& out) {
  ASSIGN_OR_RETURN(Ledger ledger, LoadLedger(g.ledger));
  ASSIGN_OR_RETURN(IssuerSetState set, LoadIssuerSet(g.ledger, ledger));
  for (const std::string& m : set.members) out << m << "\n";
  return absl::OkStatus();
}

struct IssueArgs {
  std::vector<std::string> issuers;
  std::string holder;
  std::string attrs;
  std::string predicate;
  std::string out;
};

absl::Status DoIssue(const Globals& g, const IssueArgs& a, std::ostream& out) {
  ASSIGN_OR_RETURN(Ledger ledger, LoadLedger(g.ledger));
  ASSIGN_OR_RETURN(IssuerSetState set, LoadIssuerSet(g.ledger, ledger));
  ASSIGN_OR_RETURN(std::unique_ptr<RandomSource> rng,
                   MakeRng(g, "issue", ledger.log().size()));
  std::vector<Did> issuers;
  for (const std::string& id : a.issuers) {
    ASSIGN_OR_RETURN(Did d, Did::Create(id, Role::kIssuer));
    issuers.push_back(std::move(d));
  }
  ASSIGN_OR_RETURN(Did holder, Did::Create(a.holder, Role::kHolder));
  ASSIGN_OR_RETURN(Attributes attrs, Attributes::Parse(a.attrs));
  ASSIGN_OR_RETURN(Predicate pred,
                   Predicate::Parse(Predicate::Kind::kBirth, a.predicate));
  ASSIGN_OR_RETURN(KeyPair keys, Keygen(ledger.pp()));
  MerkleRegistry registry = ledger.registry();
  ASSIGN_OR_RETURN(IssuanceResult issued,
                   IssueVc(ledger.pp(), keys.sk, set, issuers, holder, attrs,
                           pred, registry, ledger, *rng));
  Credential c{issued.record, holder.id(), issued.opening};
  RETURN_IF_ERROR(WriteFileAtomic(a.out, CredentialJson(c)));
  RETURN_IF_ERROR(SaveState(g.ledger, ledger, nullptr));
  out << "issued credential at slot " << issued.record.registry_path.leaf_index
      << " -> " << a.out << "\n";
  return absl::OkStatus();
}

int DoVerify(const Globals& g, const std::string& path, std::ostream& out,
             std::ostream& err) {
  absl::StatusOr<Ledger> ledger = LoadLedger(g.ledger);
  if (!ledger.ok()) return Fail(ledger.status(), err);
  absl::StatusOr<Credential> c = LoadCredential(path);
  if (!c.ok()) return Fail(c.status(), err);
  if (!VerifyVcOnLedger(*ledger, c->record)) {
    out << "invalid\n";
    return kExitVerifyFailed;
  }
  out << "valid\n";
  return kExitOk;
}

absl::Status DoRevoke(const Globals& g, const std::string& path,
                      const std::string& predicate, std::ostream& out) {
  ASSIGN_OR_RETURN(Ledger ledger, LoadLedger(g.ledger));
  ASSIGN_OR_RETURN(Credential c, LoadCredential(path));
  ASSIGN_OR_RETURN(Predicate death,
                   Predicate::Parse(Predicate::Kind::kDeath, predicate));
  MerkleRegistry registry = ledger.registry();
  ASSIGN_OR_RETURN(Transaction tx, RevokeVc(ledger.pp(), c.record, c.opening,
                                            death, registry, ledger));
  RETURN_IF_ERROR(SaveState(g.ledger, ledger, nullptr));
  out << "revoked slot " << tx.deleted_indices.front() << "\n";
  return absl::OkStatus();
}

absl::Status DoAudit(const Globals& g, const std::string& mode,
                     std::ostream& out) {
  ReplayMode m;
  if (mode == "verify-all") {
    m = ReplayMode::kVerifyAll;
  } else if (mode == "structure") {
    m = ReplayMode::kStructure;
  } else {
    return absl::InvalidArgumentError("--mode must be verify-all or structure");
  }
  ASSIGN_OR_RETURN(Ledger ledger, LoadLedger(g.ledger, m));
  out << "ok: " << ledger.log().size() << " records, epoch "
      << ledger.head_digest().epoch << ", root "
      << HexEncode(ledger.head_digest().root.bytes) << "\n";
  return absl::OkStatus();
}

absl::Status DoExport(const Globals& g, const std::string& path,
                      std::ostream& out) {
  ASSIGN_OR_RETURN(Ledger ledger, LoadLedger(g.ledger, ReplayMode::kVerifyAll));
  RETURN_IF_ERROR(WriteFileAtomic(path, ledger.Persist()));
  out << "exported " << ledger.log().size() << " records -> " << path << "\n";
  return absl::OkStatus();
}

absl::Status DoImport(const Globals& g, const std::string& path, bool force,
                      std::ostream& out) {
  if (!force && std::filesystem::exists(g.ledger)) {
    return absl::AlreadyExistsError(
        absl::StrCat(g.ledger, " exists; pass --force to replace it"));
  }
  ASSIGN_OR_RETURN(Ledger ledger, LoadLedger(path, ReplayMode::kVerifyAll));
  RETURN_IF_ERROR(WriteFileAtomic(g.ledger, ledger.Persist()));
  out << "imported " << ledger.log().size() << " records -> " << g.ledger
      << "\n";
  return absl::OkStatus();
}

struct BenchArgs {
  std::string mode = "toy";
  int security = 128;
  size_t modulus_bits = 0;
  std::string sweep = "all";
  int reps = 10;
  double min_seconds = 0.05;
  int max_ni = 2048;
  std::string out;
};

absl::Status DoBench(const Globals& g, const BenchArgs& a, std::ostream& out) {
  ASSIGN_OR_RETURN(RsaMode mode, ParseMode(a.mode));
  ASSIGN_OR_RETURN(std::unique_ptr<RandomSource> rng, MakeRng(g, "bench", 0));
  ASSIGN_OR_RETURN(PublicParams pp,
                   Setup(a.security, {mode, a.modulus_bits}, *rng));
  BenchOptions options;
  options.min_reps = a.reps;
  options.min_seconds = a.min_seconds;
  std::erase_if(options.ni, [&](int n) { return n > a.max_ni; });
  if (a.sweep != "all") {
    if (a.sweep != "ni") options.ni.clear();
    if (a.sweep != "uis") options.uis.clear();
    if (a.sweep != "iv") options.iv.clear();
  }
  ASSIGN_OR_RETURN(std::vector<BenchRow> rows, RunBench(pp, options, *rng));
  std::string csv = BenchCsv(rows);
  if (a.out.empty()) {
    out << csv;
  } else {
    RETURN_IF_ERROR(WriteFileAtomic(a.out, csv));
    out << rows.size() << " rows -> " << a.out << "\n";
  }
  return absl::OkStatus();
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Signature-less verifiable credentials over a simulated ledger",
               "pihvc"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--ledger", g.ledger, "Ledger file")->capture_default_str();
  app.add_option("--seed", g.seed, "32-byte hex seed for reproducible runs");

  SetupArgs setup;
  CLI::App* setup_cmd = app.add_subcommand("setup", "Create a new ledger");
  setup_cmd->add_option("--mode", setup.mode, "toy or production")
      ->capture_default_str();
  setup_cmd->add_option("--security", setup.security, "Security level in bits")
      ->capture_default_str();
  setup_cmd->add_option("--height", setup.height, "Registry tree height")
      ->capture_default_str();
  setup_cmd->add_option("--modulus-bits", setup.modulus_bits,
                        "RSA modulus size (0 = mode default)");
  setup_cmd->add_option("--backend", setup.backend, "Qualification backend")
      ->capture_default_str();
  setup_cmd->add_option("--reuse", setup.reuse, "never or lowest-free")
      ->capture_default_str();
  setup_cmd->add_option("--issuers", setup.issuers, "Initial issuer DIDs")
      ->delimiter(',');
  setup_cmd->add_flag("--force", setup.force, "Replace an existing ledger");

  std::vector<std::string> issuer_dids;
  CLI::App* issuer_cmd = app.add_subcommand("issuer", "Manage the issuer set");
  issuer_cmd->require_subcommand(1);
  CLI::App* issuer_add = issuer_cmd->add_subcommand("add", "Add issuers");
  CLI::App* issuer_remove =
      issuer_cmd->add_subcommand("remove", "Remove issuers");
  CLI::App* issuer_list = issuer_cmd->add_subcommand("list", "List issuers");
  for (CLI::App* c : {issuer_add, issuer_remove}) {
    c->add_option("--did", issuer_dids, "Issuer DID")
        ->required()
        ->delimiter(',');
  }

  IssueArgs issue;
  CLI::App* issue_cmd = app.add_subcommand("issue", "Issue a credential");
  issue_cmd->add_option("--issuer", issue.issuers, "Issuer DID")
      ->required()
      ->delimiter(',');
  issue_cmd->add_option("--holder", issue.holder, "Holder DID")->required();
  issue_cmd->add_option("--attrs", issue.attrs, "name=value,...")->required();
  issue_cmd->add_option("--predicate", issue.predicate, "Birth predicate")
      ->required();
  issue_cmd->add_option("--out", issue.out, "Credential file")->required();

  std::string credential;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Verify a credential");
  verify_cmd->add_option("--credential", credential, "Credential file")
      ->required();

  std::string death;
  CLI::App* revoke_cmd = app.add_subcommand("revoke", "Revoke a credential");
  revoke_cmd->add_option("--credential", credential, "Credential file")
      ->required();
  revoke_cmd->add_option("--predicate", death, "Death predicate")->required();

  std::string audit_mode = "verify-all";
  CLI::App* audit_cmd = app.add_subcommand("audit", "Replay the ledger");
  audit_cmd->add_option("--mode", audit_mode, "verify-all or structure")
      ->capture_default_str();

  std::string export_path;
  CLI::App* export_cmd = app.add_subcommand("export", "Copy out the ledger");
  export_cmd->add_option("--out", export_path, "Destination")->required();

  std::string import_path;
  bool import_force = false;
  CLI::App* import_cmd = app.add_subcommand("import", "Adopt a ledger file");
  import_cmd->add_option("--in", import_path, "Source")->required();
  import_cmd->add_flag("--force", import_force, "Replace an existing ledger");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run the NI/UIS/IV sweeps");
  bench_cmd->add_option("--mode", bench.mode, "toy or production")
      ->capture_default_str();
  bench_cmd->add_option("--security", bench.security)->capture_default_str();
  bench_cmd->add_option("--modulus-bits", bench.modulus_bits);
  bench_cmd->add_option("--sweep", bench.sweep, "all, ni, uis or iv")
      ->capture_default_str();
  bench_cmd->add_option("--reps", bench.reps, "Minimum runs per phase")
      ->capture_default_str();
  bench_cmd->add_option("--min-seconds", bench.min_seconds,
                        "Minimum measured time per phase")
      ->capture_default_str();
  bench_cmd->add_option("--max-ni", bench.max_ni, "Largest NI value")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  absl::Status status;
  if (setup_cmd->parsed()) {
    status = DoSetup(g, setup, out);
  } else if (issuer_add->parsed()) {
    status = DoIssuerUpdate(g, true, issuer_dids, out);
  } else if (issuer_remove->parsed()) {
    status = DoIssuerUpdate(g, false, issuer_dids, out);
  } else if (issuer_list->parsed()) {
    status = DoIssuerList(g, out);
  } else if (issue_cmd->parsed()) {
    status = DoIssue(g, issue, out);
  } else if (verify_cmd->parsed()) {
    return DoVerify(g, credential, out, err);
  } else if (revoke_cmd->parsed()) {
    status = DoRevoke(g, credential, death, out);
  } else if (audit_cmd->parsed()) {
    status = DoAudit(g, audit_mode, out);
  } else if (export_cmd->parsed()) {
    status = DoExport(g, export_path, out);
  } else if (import_cmd->parsed()) {
    status = DoImport(g, import_path, import_force, out);
  } else if (bench_cmd->parsed()) {
    status = DoBench(g, bench, out);
  }
  return status.ok() ? kExitOk : Fail(status, err);
}

}  // namespace pihvc::cli
