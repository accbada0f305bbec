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

#include "pihvc/multiswap/multiswap.h"

#include <algorithm>

#include "absl/status/status.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr std::string_view kStatementTag = "pihvc/swap-stmt";
constexpr std::string_view kProofTag = "pihvc/swap-proof";
constexpr std::string_view kSetTag = "pihvc/swap-set";
constexpr int kMaxBlindDraws = 1024;

mpz_class ProductOf(const std::vector<PrimeDigest>& set) {
  std::vector<mpz_class> values;
  values.reserve(set.size());
  for (const PrimeDigest& p : set) values.push_back(p.value);
  return Product(values);
}

mpz_class ExpandRho(const RsaParams& rsa, const SwapParams& params,
                    ByteView beta) {
  size_t bytes = (rsa.modulus_bits + kChallengeBits + 7) / 8;
  return NatFromBytes(CrhExpand(params.crh, crh_site::kXof,
                                {ToBytes("swap-rho"), Bytes(beta.begin(),
                                                            beta.end())},
                                bytes));
}

// Witness layout: e_W (0), rho0 (1), e_Y (2), rho1 (3).
SigmaStatement JointStatement(const RsaParams& rsa, const SwapStatement& stmt,
                              const std::array<mpz_class, 2>& e) {
  SigmaStatement s;
  s.label = "multiswap";
  s.context = FieldWriter("pihvc/swap-ctx")
                  .Add(stmt.Serialize())
                  .AddNat(e[0])
                  .AddNat(e[1])
                  .Finish();
  s.num_witnesses = 4;
  s.equations.push_back({stmt.acc_before, {{stmt.acc_mid, 0}}});
  s.equations.push_back({e[0], {{rsa.g, 0}, {rsa.h, 1}}});
  s.equations.push_back({stmt.acc_after, {{stmt.acc_mid, 2}}});
  s.equations.push_back({e[1], {{rsa.g, 2}, {rsa.h, 3}}});
  return s;
}

ZkpokeProof Part(const ZkpokeProof& joint, size_t eq,
                 std::vector<size_t> witnesses) {
  ZkpokeProof p;
  p.commitment_msgs = {joint.commitment_msgs[eq]};
  p.challenge = joint.challenge;
  for (size_t w : witnesses) p.responses.push_back(joint.responses[w]);
  return p;
}

// Rebuilds the joint transcript, or nullopt if the parts disagree.
std::optional<ZkpokeProof> Join(const SwapProof& proof) {
  const ZkpokeProof& rm = proof.pi_remove;
  const ZkpokeProof& in = proof.pi_insert;
  const ZkpokeProof& o0 = proof.commitment_openproofs[0];
  const ZkpokeProof& o1 = proof.commitment_openproofs[1];
  for (const ZkpokeProof* p : {&rm, &in, &o0, &o1}) {
    if (p->commitment_msgs.size() != 1) return std::nullopt;
    if (p->challenge != rm.challenge) return std::nullopt;
  }
  if (rm.responses.size() != 1 || in.responses.size() != 1 ||
      o0.responses.size() != 2 || o1.responses.size() != 2) {
    return std::nullopt;
  }
  if (rm.responses[0] != o0.responses[0] || in.responses[0] != o1.responses[0]) {
    return std::nullopt;
  }
  ZkpokeProof joint;
  joint.commitment_msgs = {rm.commitment_msgs[0], o0.commitment_msgs[0],
                           in.commitment_msgs[0], o1.commitment_msgs[0]};
  joint.challenge = rm.challenge;
  joint.responses = {o0.responses[0], o0.responses[1], o1.responses[0],
                     o1.responses[1]};
  return joint;
}

// Splits `state.elements` into (kept, removed); fails unless W is a subset.
absl::StatusOr<std::vector<PrimeDigest>> Remaining(
    const AccumulatorState& state, std::vector<PrimeDigest> W) {
  std::sort(W.begin(), W.end(), PrimeLess);
  for (size_t i = 0; i < W.size(); ++i) {
    if (i > 0 && W[i].value == W[i - 1].value) {
      return absl::InvalidArgumentError("swap: duplicate element in W");
    }
    if (!state.Contains(W[i].value)) {
      return absl::NotFoundError("swap: W is not a subset of the set");
    }
  }
  std::vector<PrimeDigest> kept;
  for (const PrimeDigest& e : state.elements) {
    bool removed = std::binary_search(W.begin(), W.end(), e, PrimeLess);
    if (!removed) kept.push_back(e);
  }
  return kept;
}

}  // namespace

absl::StatusOr<SwapParams> SwapSetup(int security_bits) {
  ASSIGN_OR_RETURN(CrhParams crh, CrhSetup(security_bits));
  return SwapParams{std::move(crh)};
}

Bytes SwapStatement::Serialize() const {
  return FieldWriter(kStatementTag)
      .AddNat(acc_before)
      .AddNat(acc_after)
      .AddNat(acc_mid)
      .AddNat(d0.value)
      .AddU32(d0.nonce)
      .AddNat(d1.value)
      .AddU32(d1.nonce)
      .Finish();
}

absl::StatusOr<SwapStatement> SwapStatement::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kStatementTag));
  SwapStatement s;
  ASSIGN_OR_RETURN(s.acc_before, r.NextNat());
  ASSIGN_OR_RETURN(s.acc_after, r.NextNat());
  ASSIGN_OR_RETURN(s.acc_mid, r.NextNat());
  ASSIGN_OR_RETURN(s.d0.value, r.NextNat());
  ASSIGN_OR_RETURN(s.d0.nonce, r.NextU32());
  ASSIGN_OR_RETURN(s.d1.value, r.NextNat());
  ASSIGN_OR_RETURN(s.d1.nonce, r.NextU32());
  RETURN_IF_ERROR(r.Done());
  return s;
}

Bytes SwapProof::Serialize() const {
  return FieldWriter(kProofTag)
      .AddNat(exponent_commitments[0])
      .AddNat(exponent_commitments[1])
      .Add(pi_remove.Serialize())
      .Add(pi_insert.Serialize())
      .Add(commitment_openproofs[0].Serialize())
      .Add(commitment_openproofs[1].Serialize())
      .Finish();
}

absl::StatusOr<SwapProof> SwapProof::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kProofTag));
  SwapProof p;
  ASSIGN_OR_RETURN(p.exponent_commitments[0], r.NextNat());
  ASSIGN_OR_RETURN(p.exponent_commitments[1], r.NextNat());
  std::array<Bytes, 4> parts;
  for (Bytes& part : parts) {
    ASSIGN_OR_RETURN(part, r.Next());
  }
  RETURN_IF_ERROR(r.Done());
  ASSIGN_OR_RETURN(p.pi_remove, ZkpokeProof::Deserialize(parts[0]));
  ASSIGN_OR_RETURN(p.pi_insert, ZkpokeProof::Deserialize(parts[1]));
  ASSIGN_OR_RETURN(p.commitment_openproofs[0],
                   ZkpokeProof::Deserialize(parts[2]));
  ASSIGN_OR_RETURN(p.commitment_openproofs[1],
                   ZkpokeProof::Deserialize(parts[3]));
  return p;
}

absl::StatusOr<PrimeDigest> SwapSetCommitment(const SwapParams& params,
                                              std::vector<PrimeDigest> set,
                                              ByteView beta) {
  if (beta.size() < kSwapBetaBytes) {
    return absl::InvalidArgumentError("swap: beta shorter than 32 bytes");
  }
  std::sort(set.begin(), set.end(), PrimeLess);
  std::vector<mpz_class> values;
  for (const PrimeDigest& p : set) values.push_back(p.value);
  Bytes msg = FieldWriter(kSetTag).AddNatList(values).Finish();
  Append(msg, beta);
  return HashToPrime(params.crh, msg);
}

absl::StatusOr<AccumulatorState> ApplySwap(const RsaParams& params,
                                           const AccumulatorState& state,
                                           const std::vector<PrimeDigest>& W,
                                           const std::vector<PrimeDigest>& Y,
                                           const mpz_class& t_after) {
  ASSIGN_OR_RETURN(std::vector<PrimeDigest> next, Remaining(state, W));
  for (const PrimeDigest& y : Y) {
    bool collides = std::binary_search(next.begin(), next.end(), y, PrimeLess);
    if (collides) {
      return absl::AlreadyExistsError("swap: Y intersects the kept elements");
    }
  }
  next.insert(next.end(), Y.begin(), Y.end());
  return ComAcc(params, std::move(next), t_after);
}

absl::StatusOr<mpz_class> SwapMidState(const RsaParams& params,
                                       const AccumulatorState& state,
                                       const std::vector<PrimeDigest>& W,
                                       const mpz_class& t_after) {
  ASSIGN_OR_RETURN(std::vector<PrimeDigest> kept, Remaining(state, W));
  mpz_class tau = gcd(state.t, t_after);
  return ModPow(params.g, ProductOf(kept) * tau, params.N);
}

absl::StatusOr<SwapProof> SwapProve(const RsaParams& rsa,
                                    const SwapParams& params,
                                    const SwapStatement& stmt,
                                    const SwapWitness& wit, RandomSource& rng) {
  ASSIGN_OR_RETURN(PrimeDigest d0,
                   SwapSetCommitment(params, wit.removed, wit.beta0));
  ASSIGN_OR_RETURN(PrimeDigest d1,
                   SwapSetCommitment(params, wit.inserted, wit.beta1));
  if (!(d0 == stmt.d0) || !(d1 == stmt.d1)) {
    return absl::FailedPreconditionError(
        "swap: relation violation (set commitment mismatch)");
  }
  if (wit.t_before <= 0 || wit.t_after <= 0) {
    return absl::InvalidArgumentError("swap: blinds must be positive");
  }
  mpz_class tau = gcd(wit.t_before, wit.t_after);
  mpz_class e_w = ProductOf(wit.removed) * (wit.t_before / tau);
  mpz_class e_y = ProductOf(wit.inserted) * (wit.t_after / tau);
  if (ModPow(stmt.acc_mid, e_w, rsa.N) != stmt.acc_before ||
      ModPow(stmt.acc_mid, e_y, rsa.N) != stmt.acc_after) {
    return absl::FailedPreconditionError(
        "swap: relation violation (accumulator transition)");
  }
  if (!IsGroupElement(rsa, stmt.acc_mid)) {
    return absl::FailedPreconditionError("swap: acc_mid not in G");
  }
  mpz_class rho0 = ExpandRho(rsa, params, wit.beta0);
  mpz_class rho1 = ExpandRho(rsa, params, wit.beta1);
  SwapProof proof;
  proof.exponent_commitments[0] =
      ModPow(rsa.g, e_w, rsa.N) * ModPow(rsa.h, rho0, rsa.N) % rsa.N;
  proof.exponent_commitments[1] =
      ModPow(rsa.g, e_y, rsa.N) * ModPow(rsa.h, rho1, rsa.N) % rsa.N;
  ASSIGN_OR_RETURN(
      ZkpokeProof joint,
      SigmaProve(rsa, JointStatement(rsa, stmt, proof.exponent_commitments),
                 {e_w, rho0, e_y, rho1}, rng));
  proof.pi_remove = Part(joint, 0, {0});
  proof.commitment_openproofs[0] = Part(joint, 1, {0, 1});
  proof.pi_insert = Part(joint, 2, {2});
  proof.commitment_openproofs[1] = Part(joint, 3, {2, 3});
  SecureClear(e_w);
  SecureClear(e_y);
  return proof;
}

bool SwapVerify(const RsaParams& rsa, const SwapParams& params,
                const SwapStatement& stmt, const SwapProof& proof) {
  // Set commitments are hash-to-prime outputs: odd with the top bit set.
  for (const PrimeDigest* d : {&stmt.d0, &stmt.d1}) {
    if (BitLength(d->value) != params.crh.digest_bits ||
        mpz_even_p(d->value.get_mpz_t())) {
      return false;
    }
  }
  if (!IsGroupElement(rsa, stmt.acc_mid)) return false;
  std::optional<ZkpokeProof> joint = Join(proof);
  if (!joint) return false;
  return SigmaVerify(rsa, JointStatement(rsa, stmt, proof.exponent_commitments),
                     *joint);
}

absl::StatusOr<SwapTransition> PrepareSwap(const RsaParams& rsa,
                                           const SwapParams& params,
                                           const AccumulatorState& state,
                                           const mpz_class& carried_factor,
                                           const std::vector<PrimeDigest>& W,
                                           const std::vector<PrimeDigest>& Y,
                                           RandomSource& rng) {
  if (carried_factor <= 1 || state.t % carried_factor != 0) {
    return absl::InvalidArgumentError(
        "swap: carried factor must divide the current blind");
  }
  ASSIGN_OR_RETURN(std::vector<PrimeDigest> kept, Remaining(state, W));
  mpz_class u_after = ProductOf(kept) * ProductOf(Y);
  for (int draw = 0; draw < kMaxBlindDraws; ++draw) {
    SwapTransition tr;
    tr.next_carried_factor = SampleBlindFactor(rng, u_after);
    mpz_class t_after = carried_factor * tr.next_carried_factor;
    ASSIGN_OR_RETURN(tr.after, ApplySwap(rsa, state, W, Y, t_after));
    ASSIGN_OR_RETURN(mpz_class mid, SwapMidState(rsa, state, W, t_after));
    if (!IsGroupElement(rsa, mid) || !IsGroupElement(rsa, tr.after.acc)) {
      continue;
    }
    tr.witness = {W, Y, rng.RandomBytes(kSwapBetaBytes),
                  rng.RandomBytes(kSwapBetaBytes), state.t, t_after};
    tr.statement.acc_before = state.acc;
    tr.statement.acc_after = tr.after.acc;
    tr.statement.acc_mid = mid;
    ASSIGN_OR_RETURN(tr.statement.d0,
                     SwapSetCommitment(params, W, tr.witness.beta0));
    ASSIGN_OR_RETURN(tr.statement.d1,
                     SwapSetCommitment(params, Y, tr.witness.beta1));
    return tr;
  }
  return absl::ResourceExhaustedError("swap: blind sampling failed");
}

}  // namespace pihvc
