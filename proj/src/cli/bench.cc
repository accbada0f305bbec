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


#include "pihvc/cli/bench.h"

#include <chrono>
#include <cstdio>
#include <functional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "pihvc/multiswap/multiswap.h"
#include "pihvc/protocol/protocol.h"
#include "pihvc/registry/registry.h"
#include "pihvc/util/metrics.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::string> BenchDids(std::string_view stem, int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    out.push_back(absl::StrFormat("did:bench:%s-%05d", std::string(stem), i));
  }
  return out;
}

// Counts operations on the first run, then times runs until both floors in
// `options` are met.
absl::StatusOr<BenchRow> Measure(const BenchOptions& options,
                                 std::string parameter, int64_t value,
                                 std::string phase,
                                 const std::function<absl::Status()>& run) {
  BenchRow row{std::move(parameter), value, std::move(phase)};
  {
    CounterScope scope;
    RETURN_IF_ERROR(run());
    OpCounters d = scope.Delta();
    row.modexp_count = d.modexp;
    row.hash_count = d.hash;
  }
  int reps = 0;
  double total = 0;
  while (reps < options.min_reps || total < options.min_seconds) {
    auto start = Clock::now();
    RETURN_IF_ERROR(run());
    total += std::chrono::duration<double>(Clock::now() - start).count();
    ++reps;
  }
  row.mean_seconds = total / reps;
  return row;
}

absl::Status BenchNi(const PublicParams& pp, const BenchOptions& options,
                     RandomSource& rng, std::vector<BenchRow>& rows) {
  ASSIGN_OR_RETURN(KeyPair keys, Keygen(pp));
  ASSIGN_OR_RETURN(Did holder, Did::Create("did:bench:holder", Role::kHolder));
  const Bytes binding(32, 0x5a);
  for (int n : options.ni) {
    if (n < 1) return absl::InvalidArgumentError("bench: NI must be >= 1");
    std::vector<std::string> members = BenchDids("issuer", n);
    ASSIGN_OR_RETURN(
        BenchRow gen,
        Measure(options, "NI", n, "acc_gen", [&]() {
          return CreateIssuerSet(pp, members, rng).status();
        }));
    rows.push_back(std::move(gen));

    ASSIGN_OR_RETURN(IssuerSetState set, CreateIssuerSet(pp, members, rng));
    ASSIGN_OR_RETURN(Did issuer, Did::Create(members[n / 2], Role::kIssuer));
    ASSIGN_OR_RETURN(IssuerNonce nonce, IssuerBegin(pp, issuer, holder, rng));
    ASSIGN_OR_RETURN(HolderRequest req,
                     MakeHolderRequest(pp, holder, {nonce.r_I}, rng));
    QuaSecrets secrets{nonce.r_I0, req.r_H,
                       DidToken{ToBytes(issuer.id()), req.R}, {nonce.r_I}};
    QualificationBundle bundle;
    ASSIGN_OR_RETURN(
        BenchRow prove,
        Measure(options, "NI", n, "qua_prove", [&]() -> absl::Status {
          ASSIGN_OR_RETURN(bundle, ProveQua(pp, set, holder, secrets, keys.sk,
                                            binding, rng));
          return absl::OkStatus();
        }));
    rows.push_back(std::move(prove));
    ASSIGN_OR_RETURN(
        BenchRow verify,
        Measure(options, "NI", n, "qua_verify", [&]() {
          if (!VeriQua(pp, holder.bytes(), bundle.pub_token, bundle.r_I0,
                       set.acc(), bundle.proof, keys.vk, binding)) {
            return absl::InternalError("bench: qualification proof rejected");
          }
          return absl::OkStatus();
        }));
    rows.push_back(std::move(verify));
  }
  return absl::OkStatus();
}

absl::Status BenchUis(const PublicParams& pp, const BenchOptions& options,
                      RandomSource& rng, std::vector<BenchRow>& rows) {
  ASSIGN_OR_RETURN(SwapParams swap, SwapSetup(pp.security_bits));
  ASSIGN_OR_RETURN(
      IssuerSetState base,
      CreateIssuerSet(pp, BenchDids("issuer", options.uis_base_set), rng));
  for (int k : options.uis) {
    // Half of the update removes existing members, the rest adds new ones.
    const int removed = k / 2;
    if (k < 1 || removed > options.uis_base_set) {
      return absl::InvalidArgumentError("bench: UIS out of range");
    }
    std::vector<std::string> remove(base.members.begin(),
                                    base.members.begin() + removed);
    std::vector<std::string> add = BenchDids("added", k - removed);
    IssuerSetUpdate update;
    ASSIGN_OR_RETURN(
        BenchRow prove,
        Measure(options, "UIS", k, "swap_prove", [&]() -> absl::Status {
          ASSIGN_OR_RETURN(update,
                           UpdateIssuerSet(pp, base, remove, add, rng));
          return absl::OkStatus();
        }));
    rows.push_back(std::move(prove));
    ASSIGN_OR_RETURN(
        BenchRow verify,
        Measure(options, "UIS", k, "swap_verify", [&]() {
          if (!SwapVerify(pp.rsa, swap, update.statement, update.proof)) {
            return absl::InternalError("bench: swap proof rejected");
          }
          return absl::OkStatus();
        }));
    rows.push_back(std::move(verify));
  }
  return absl::OkStatus();
}

absl::Status BenchIv(const PublicParams& pp, const BenchOptions& options,
                     RandomSource& rng, std::vector<BenchRow>& rows) {
  ASSIGN_OR_RETURN(MerkleRegistry empty,
                   MerkleRegistry::Create(pp.crh, options.iv_tree_height));
  for (int k : options.iv) {
    if (k < 1) return absl::InvalidArgumentError("bench: IV must be >= 1");
    std::vector<Digest> leaves;
    for (int i = 0; i < k; ++i) {
      leaves.push_back(Digest{rng.RandomBytes(pp.crh.digest_bits / 8)});
    }
    MerkleRegistry filled = empty;
    ASSIGN_OR_RETURN(
        BenchRow insert,
        Measure(options, "IV", k, "registry_insert", [&]() {
          filled = empty;
          return filled.InsertLeafHashes(leaves).status();
        }));
    rows.push_back(std::move(insert));
    std::vector<MerklePath> paths;
    for (int i = 0; i < k; ++i) {
      ASSIGN_OR_RETURN(MerklePath p, filled.ProveLeaf(i));
      paths.push_back(std::move(p));
    }
    ASSIGN_OR_RETURN(
        BenchRow verify,
        Measure(options, "IV", k, "registry_verify", [&]() {
          for (int i = 0; i < k; ++i) {
            if (!VerifyLeaf(pp.crh, filled.root(), leaves[i], paths[i],
                            filled.height())) {
              return absl::InternalError("bench: registry path rejected");
            }
          }
          return absl::OkStatus();
        }));
    rows.push_back(std::move(verify));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<BenchRow>> RunBench(const PublicParams& pp,
                                               const BenchOptions& options,
                                               RandomSource& rng) {
  if (options.min_reps < 1) {
    return absl::InvalidArgumentError("bench: min_reps must be >= 1");
  }
  std::vector<BenchRow> rows;
  RETURN_IF_ERROR(BenchNi(pp, options, rng, rows));
  RETURN_IF_ERROR(BenchUis(pp, options, rng, rows));
  RETURN_IF_ERROR(BenchIv(pp, options, rng, rows));
  return rows;
}

std::string BenchCsv(const std::vector<BenchRow>& rows) {
  std::string out = absl::StrCat(kBenchCsvHeader, "\n");
  for (const BenchRow& r : rows) {
    absl::StrAppend(&out, r.parameter, ",", r.value, ",", r.phase, ",",
                    absl::StrFormat("%.9f", r.mean_seconds), ",",
                    r.modexp_count, ",", r.hash_count, "\n");
  }
  return out;
}

}  // namespace pihvc
