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

#include "pihvc/ledger/issuance.h"

#include "absl/status/status.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {

absl::StatusOr<IssuanceResult> IssueVc(const PublicParams& pp,
                                       const SecretKey& sk,
                                       const IssuerSetState& issuer_set,
                                       const std::vector<Did>& issuers,
                                       const Did& holder,
                                       const Attributes& attrs,
                                       const Predicate& pred,
                                       MerkleRegistry& registry, Ledger& ledger,
                                       RandomSource& rng) {
  if (issuers.empty()) return absl::InvalidArgumentError("issue: no issuers");
  if (registry.root() != ledger.head_digest().root) {
    return absl::FailedPreconditionError(
        "issue: registry is not at the ledger head");
  }
  if (issuer_set.acc() != ledger.issuer_acc()) {
    return absl::FailedPreconditionError(
        "issue: issuer set is not the ledger's current set");
  }
  IssuanceResult out;
  std::vector<Bytes> r_Is;
  for (const Did& issuer : issuers) {
    ASSIGN_OR_RETURN(IssuerNonce n, IssuerBegin(pp, issuer, holder, rng));
    out.transcript.Record("issuer_nonce", n.r_I);
    r_Is.push_back(n.r_I);
    out.nonces.push_back(std::move(n));
  }
  ASSIGN_OR_RETURN(out.request, MakeHolderRequest(pp, holder, r_Is, rng));
  out.transcript.Record("auth_req", out.request.request.R);
  for (size_t i = 0; i < issuers.size(); ++i) {
    if (!IssuerValidateRequest(pp, out.request.request, out.request.r_H, r_Is,
                               holder, attrs, pred)) {
      return absl::PermissionDeniedError(
          "issue: request or predicate rejected by an issuer");
    }
  }
  ASSIGN_OR_RETURN(out.opening,
                   Commit(pp.crh, attrs, pred,
                          rng.RandomBytes(kMinCommitRandomness)));
  Digest leaf = LeafHash(pp.crh, out.opening.value);
  out.record.commitment = out.opening.value;
  std::vector<QualEntry> quals;
  for (size_t i = 0; i < issuers.size(); ++i) {
    QuaSecrets secrets{out.nonces[i].r_I0, out.request.r_H,
                       DidToken{ToBytes(issuers[i].id()), out.request.R}, r_Is};
    ASSIGN_OR_RETURN(QualificationBundle b,
                     ProveQua(pp, issuer_set, holder, secrets, sk, leaf.bytes,
                              rng));
    out.transcript.Record("qua_bundle", b.Serialize());
    quals.push_back({0, b});
    out.record.bundles.push_back(std::move(b));
  }

  MerkleRegistry next = registry;
  ASSIGN_OR_RETURN(std::vector<uint64_t> slots, next.InsertLeafHashes({leaf}));
  ASSIGN_OR_RETURN(out.record.registry_path, next.ProveLeaf(slots[0]));
  ASSIGN_OR_RETURN(out.tx, ledger.MakeIssueTx({leaf}, std::move(quals)));
  if (out.tx.resulting_digest.root != next.root()) {
    return absl::InternalError("issue: registry and ledger replica diverged");
  }
  RETURN_IF_ERROR(ledger.Append(out.tx));
  registry = std::move(next);
  out.transcript.Record("vc_record", out.record.Serialize());
  return out;
}

absl::StatusOr<Transaction> RevokeVc(const PublicParams& pp,
                                     const VcRecord& record,
                                     const Commitment& opening,
                                     const Predicate& death_pred,
                                     MerkleRegistry& registry, Ledger& ledger) {
  if (registry.root() != ledger.head_digest().root) {
    return absl::FailedPreconditionError(
        "revoke: registry is not at the ledger head");
  }
  if (!(opening.value == record.commitment) ||
      !VerifyCommit(pp.crh, opening.value, opening.attrs, opening.randomness)) {
    return absl::PermissionDeniedError("revoke: opening does not match");
  }
  ASSIGN_OR_RETURN(bool dead, EvalPredicate(opening.attrs, death_pred));
  if (!dead) {
    return absl::FailedPreconditionError("revoke: death predicate not met");
  }
  uint64_t index = record.registry_path.leaf_index;
  auto it = registry.leaves().find(index);
  if (it == registry.leaves().end() ||
      it->second != LeafHash(pp.crh, record.commitment)) {
    return absl::NotFoundError("revoke: credential is not in the registry");
  }
  MerkleRegistry next = registry;
  RETURN_IF_ERROR(next.DeleteLeaf(index).status());
  ASSIGN_OR_RETURN(Transaction tx, ledger.MakeRevokeTx({index}));
  RETURN_IF_ERROR(ledger.Append(tx));
  registry = std::move(next);
  return tx;
}

absl::StatusOr<IssuerSetState> UpdateIssuers(
    const PublicParams& pp, const IssuerSetState& issuer_set,
    const std::vector<std::string>& remove,
    const std::vector<std::string>& add, Ledger& ledger, RandomSource& rng) {
  if (issuer_set.acc() != ledger.issuer_acc()) {
    return absl::FailedPreconditionError(
        "issuer update: issuer set is not the ledger's current set");
  }
  ASSIGN_OR_RETURN(IssuerSetUpdate update,
                   UpdateIssuerSet(pp, issuer_set, remove, add, rng));
  ASSIGN_OR_RETURN(Transaction tx,
                   ledger.MakeIssuerUpdateTx(
                       {std::move(update.statement), std::move(update.proof)}));
  RETURN_IF_ERROR(ledger.Append(tx));
  return std::move(update.next);
}

}  // namespace pihvc
