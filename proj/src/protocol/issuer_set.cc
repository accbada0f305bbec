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

#include "pihvc/protocol/issuer_set.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr std::string_view kIssuerSetTag = "pihvc/issuer-set";

absl::Status CheckMemberIds(const std::vector<std::string>& ids) {
  for (const std::string& id : ids) {
    RETURN_IF_ERROR(Did::Create(id, Role::kIssuer).status());
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<PrimeDigest>> Primes(
    const PublicParams& pp, const std::vector<std::string>& ids) {
  std::vector<PrimeDigest> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) {
    ASSIGN_OR_RETURN(PrimeDigest p, HashToPrime(pp.crh, AsBytes(id)));
    out.push_back(std::move(p));
  }
  return out;
}

absl::StatusOr<std::vector<std::string>> SortedUnique(
    std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    return absl::InvalidArgumentError("issuer set: duplicate issuer");
  }
  return ids;
}

}  // namespace

bool IssuerSetState::Contains(std::string_view did) const {
  return std::binary_search(members.begin(), members.end(), did);
}

Bytes IssuerSetState::Serialize() const {
  std::vector<Bytes> ids;
  for (const std::string& m : members) ids.push_back(ToBytes(m));
  return FieldWriter(kIssuerSetTag)
      .AddList(ids)
      .AddNat(acc_state.t)
      .AddNat(carried_factor)
      .AddNat(acc_state.acc)
      .Finish();
}

absl::StatusOr<IssuerSetState> IssuerSetState::Deserialize(
    const PublicParams& pp, ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kIssuerSetTag));
  ASSIGN_OR_RETURN(std::vector<Bytes> ids, r.NextList());
  ASSIGN_OR_RETURN(mpz_class t, r.NextNat());
  ASSIGN_OR_RETURN(mpz_class carried, r.NextNat());
  ASSIGN_OR_RETURN(mpz_class acc, r.NextNat());
  RETURN_IF_ERROR(r.Done());
  IssuerSetState s;
  for (const Bytes& id : ids) s.members.push_back(ToString(id));
  if (!std::is_sorted(s.members.begin(), s.members.end()) ||
      std::adjacent_find(s.members.begin(), s.members.end()) !=
          s.members.end()) {
    return absl::InvalidArgumentError("issuer set: members not sorted");
  }
  RETURN_IF_ERROR(CheckMemberIds(s.members));
  if (carried <= 1 || t % carried != 0) {
    return absl::InvalidArgumentError("issuer set: bad carried blind factor");
  }
  ASSIGN_OR_RETURN(std::vector<PrimeDigest> primes, Primes(pp, s.members));
  ASSIGN_OR_RETURN(s.acc_state, ComAcc(pp.rsa, std::move(primes), t));
  if (s.acc_state.acc != acc) {
    return absl::DataLossError("issuer set: accumulator does not recompute");
  }
  s.carried_factor = carried;
  return s;
}

absl::StatusOr<IssuerSetState> CreateIssuerSet(
    const PublicParams& pp, const std::vector<std::string>& members,
    RandomSource& rng) {
  IssuerSetState s;
  ASSIGN_OR_RETURN(s.members, SortedUnique(members));
  RETURN_IF_ERROR(CheckMemberIds(s.members));
  ASSIGN_OR_RETURN(std::vector<PrimeDigest> primes, Primes(pp, s.members));
  mpz_class u = 1;
  for (const PrimeDigest& p : primes) u *= p.value;
  for (int tries = 0; tries < 1024; ++tries) {
    mpz_class carried = SampleBlindFactor(rng, u);
    mpz_class t = carried * SampleBlindFactor(rng, u);
    ASSIGN_OR_RETURN(s.acc_state, ComAcc(pp.rsa, primes, t));
    if (IsGroupElement(pp.rsa, s.acc_state.acc)) {
      s.carried_factor = carried;
      return s;
    }
  }
  return absl::InternalError("issuer set: could not sample a blind");
}

absl::StatusOr<MembershipWitness> IssuerWitness(const PublicParams& pp,
                                                const IssuerSetState& state,
                                                std::string_view did) {
  if (!state.Contains(did)) {
    return absl::NotFoundError(
        absl::StrCat("issuer set: \"", std::string(did), "\" is not a member"));
  }
  ASSIGN_OR_RETURN(PrimeDigest x, HashToPrime(pp.crh, AsBytes(did)));
  return ProveMembership(pp.rsa, state.acc_state, x);
}

absl::StatusOr<IssuerSetUpdate> UpdateIssuerSet(
    const PublicParams& pp, const IssuerSetState& state,
    const std::vector<std::string>& remove,
    const std::vector<std::string>& add, RandomSource& rng) {
  ASSIGN_OR_RETURN(std::vector<std::string> rm, SortedUnique(remove));
  ASSIGN_OR_RETURN(std::vector<std::string> ad, SortedUnique(add));
  RETURN_IF_ERROR(CheckMemberIds(ad));
  for (const std::string& id : rm) {
    if (!state.Contains(id)) {
      return absl::NotFoundError(
          absl::StrCat("issuer set: \"", id, "\" is not a member"));
    }
  }
  std::vector<std::string> next;
  std::set_difference(state.members.begin(), state.members.end(), rm.begin(),
                      rm.end(), std::back_inserter(next));
  for (const std::string& id : ad) {
    if (std::binary_search(next.begin(), next.end(), id)) {
      return absl::AlreadyExistsError(
          absl::StrCat("issuer set: \"", id, "\" is already a member"));
    }
  }
  ASSIGN_OR_RETURN(std::vector<PrimeDigest> W, Primes(pp, rm));
  ASSIGN_OR_RETURN(std::vector<PrimeDigest> Y, Primes(pp, ad));
  ASSIGN_OR_RETURN(SwapParams swap, SwapSetup(pp.security_bits));
  ASSIGN_OR_RETURN(SwapTransition tr,
                   PrepareSwap(pp.rsa, swap, state.acc_state,
                               state.carried_factor, W, Y, rng));
  IssuerSetUpdate update;
  ASSIGN_OR_RETURN(update.proof,
                   SwapProve(pp.rsa, swap, tr.statement, tr.witness, rng));
  update.statement = tr.statement;
  next.insert(next.end(), ad.begin(), ad.end());
  std::sort(next.begin(), next.end());
  update.next.members = std::move(next);
  update.next.acc_state = std::move(tr.after);
  update.next.carried_factor = tr.next_carried_factor;
  return update;
}

}  // namespace pihvc
