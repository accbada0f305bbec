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

#ifndef PIHVC_PROTOCOL_ISSUER_SET_H_
#define PIHVC_PROTOCOL_ISSUER_SET_H_

#include <gmpxx.h>

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/accumulator/accumulator.h"
#include "pihvc/multiswap/multiswap.h"
#include "pihvc/protocol/types.h"
#include "pihvc/util/random.h"

namespace pihvc {

// The legitimate issuer set and its blinded accumulator. Holds the blind, so
// it stays with whoever maintains the set.
struct IssuerSetState {
  std::vector<std::string> members;  // sorted, unique
  AccumulatorState acc_state;        // over {HashToPrime(m) : m in members}
  mpz_class carried_factor;          // blind factor kept by the next swap

  const mpz_class& acc() const { return acc_state.acc; }
  bool Contains(std::string_view did) const;

  Bytes Serialize() const;
  // Recomputes the accumulator from the members and rejects mismatches.
  static absl::StatusOr<IssuerSetState> Deserialize(const PublicParams& pp,
                                                    ByteView data);
};

absl::StatusOr<IssuerSetState> CreateIssuerSet(
    const PublicParams& pp, const std::vector<std::string>& members,
    RandomSource& rng);

// W with W^{HashToPrime(did)} = acc.
absl::StatusOr<MembershipWitness> IssuerWitness(const PublicParams& pp,
                                                const IssuerSetState& state,
                                                std::string_view did);

struct IssuerSetUpdate {
  IssuerSetState next;
  SwapStatement statement;
  SwapProof proof;
};

// Removes and adds members in one MultiSwap transition with a proof.
absl::StatusOr<IssuerSetUpdate> UpdateIssuerSet(
    const PublicParams& pp, const IssuerSetState& state,
    const std::vector<std::string>& remove,
    const std::vector<std::string>& add, RandomSource& rng);

}  // namespace pihvc

#endif  // PIHVC_PROTOCOL_ISSUER_SET_H_
