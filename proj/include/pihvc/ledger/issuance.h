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

#ifndef PIHVC_LEDGER_ISSUANCE_H_
#define PIHVC_LEDGER_ISSUANCE_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/crypto/commitment.h"
#include "pihvc/ledger/ledger.h"
#include "pihvc/protocol/protocol.h"
#include "pihvc/util/random.h"

namespace pihvc {

struct IssuanceResult {
  VcRecord record;
  Commitment opening;      // holder-private
  HolderRequest request;   // holder-private (r_H)
  std::vector<IssuerNonce> nonces;
  Transaction tx;
  SessionTranscript transcript;
};

// Runs the full issuance for one holder with one or more issuers: nonces,
// request, per-issuer validation (the predicate gate, before any mutation),
// commitment, qualification proofs bound to the commitment leaf, registry
// insert and ledger append. On error neither `registry` nor `ledger` changes.
// `registry` must be at the ledger head.
absl::StatusOr<IssuanceResult> IssueVc(const PublicParams& pp,
                                       const SecretKey& sk,
                                       const IssuerSetState& issuer_set,
                                       const std::vector<Did>& issuers,
                                       const Did& holder,
                                       const Attributes& attrs,
                                       const Predicate& pred,
                                       MerkleRegistry& registry, Ledger& ledger,
                                       RandomSource& rng);

// Deletes the credential's leaf. Requires the commitment opening and a
// satisfied death predicate over its attributes.
absl::StatusOr<Transaction> RevokeVc(const PublicParams& pp,
                                     const VcRecord& record,
                                     const Commitment& opening,
                                     const Predicate& death_pred,
                                     MerkleRegistry& registry, Ledger& ledger);

// Swaps issuers in or out and records the MultiSwap proof on the ledger.
// Returns the new set; `issuer_set` itself is left untouched.
absl::StatusOr<IssuerSetState> UpdateIssuers(
    const PublicParams& pp, const IssuerSetState& issuer_set,
    const std::vector<std::string>& remove,
    const std::vector<std::string>& add, Ledger& ledger, RandomSource& rng);

}  // namespace pihvc

#endif  // PIHVC_LEDGER_ISSUANCE_H_
