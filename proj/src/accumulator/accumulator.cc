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

#include "pihvc/accumulator/accumulator.h"

#include <algorithm>

#include "absl/status/status.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr std::string_view kMemTag = "pihvc/mem-witness";
constexpr std::string_view kNonMemTag = "pihvc/nonmem-witness";
constexpr int kMaxGammaDraws = 4096;

// Binds the sub-proofs of one non-membership witness to (acc, x).
Bytes NonMemContext(const mpz_class& acc, const mpz_class& x) {
  return FieldWriter("pihvc/nonmem-ctx").AddNat(acc).AddNat(x).Finish();
}

mpz_class ProductOf(const std::vector<PrimeDigest>& elements) {
  std::vector<mpz_class> values;
  values.reserve(elements.size());
  for (const PrimeDigest& e : elements) values.push_back(e.value);
  return Product(values);
}

}  // namespace

bool AccumulatorState::Contains(const mpz_class& value) const {
  auto it = std::lower_bound(
      elements.begin(), elements.end(), value,
      [](const PrimeDigest& e, const mpz_class& v) { return e.value < v; });
  return it != elements.end() && it->value == value;
}

mpz_class SampleBlindFactor(RandomSource& rng, const mpz_class& u) {
  while (true) {
    mpz_class f = rng.UniformBits(kBlindFactorBits) | 1;
    if (f < 3) continue;
    if (gcd(f, u) == 1) return f;
  }
}

mpz_class SampleBlind(RandomSource& rng, const mpz_class& u) {
  return SampleBlindFactor(rng, u) * SampleBlindFactor(rng, u);
}

absl::StatusOr<AccumulatorState> ComAcc(const RsaParams& params,
                                        std::vector<PrimeDigest> elements,
                                        const mpz_class& t) {
  std::sort(elements.begin(), elements.end(), PrimeLess);
  for (size_t i = 0; i < elements.size(); ++i) {
    const mpz_class& v = elements[i].value;
    if (i > 0 && v == elements[i - 1].value) {
      return absl::InvalidArgumentError("com_acc: duplicate element");
    }
    // 40 rounds bound the error by 2^-80.
    if (v < 3 || !IsProbablePrime(v, 40)) {
      return absl::InvalidArgumentError("com_acc: element is not an odd prime");
    }
  }
  if (t <= 1) return absl::InvalidArgumentError("com_acc: blind must exceed 1");
  AccumulatorState state;
  state.u = ProductOf(elements);
  if (gcd(t, state.u) != 1) {
    return absl::InvalidArgumentError("com_acc: gcd(t, u) != 1");
  }
  state.elements = std::move(elements);
  state.t = t;
  state.acc = ModPow(params.g, state.u * t, params.N);
  return state;
}

Bytes MembershipWitness::Serialize() const {
  return FieldWriter(kMemTag).AddNat(witness).Finish();
}

absl::StatusOr<MembershipWitness> MembershipWitness::Deserialize(
    ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kMemTag));
  MembershipWitness w;
  ASSIGN_OR_RETURN(w.witness, r.NextNat());
  RETURN_IF_ERROR(r.Done());
  return w;
}

absl::StatusOr<MembershipWitness> ProveMembership(const RsaParams& params,
                                                  const AccumulatorState& state,
                                                  const PrimeDigest& x) {
  if (!state.Contains(x.value)) {
    return absl::NotFoundError("prove_membership: element not in set");
  }
  mpz_class alpha = state.u / x.value;
  return MembershipWitness{ModPow(params.g, alpha * state.t, params.N)};
}

absl::StatusOr<NonMembershipExponents> ComputeNonMembershipExponents(
    const AccumulatorState& state, const PrimeDigest& x,
    const mpz_class& gamma, unsigned long shift) {
  NonMembershipExponents e;
  e.ut = state.u * state.t;
  e.alpha = x.value;
  e.gamma = gamma;
  mpz_class a, b;
  mpz_class g = ExtendedGcd(e.ut, e.alpha, a, b);
  if (g != 1) {
    return absl::FailedPreconditionError(
        "non-membership: x shares a factor with u * t");
  }
  // Normalize to 0 < a < alpha; b then satisfies b <= 0, which keeps z > 0.
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), a.get_mpz_t(), e.alpha.get_mpz_t());
  k -= shift;
  a -= k * e.alpha;
  b += k * e.ut;
  if (a == 0) {
    // Only when alpha = 1, which is never prime.
    return absl::InvalidArgumentError("non-membership: alpha must exceed 1");
  }
  e.a = a;
  e.b = b;
  e.z = e.ut * (a + gamma * e.alpha - b * gamma * e.alpha);
  return e;
}

std::optional<mpz_class> NonMembershipC(const RsaParams& params,
                                        const mpz_class& A, const mpz_class& B,
                                        const mpz_class& alpha) {
  mpz_class ab = A * ModPow(B, alpha, params.N) % params.N;
  std::optional<mpz_class> inv = ModInverse(ab, params.N);
  if (!inv) return std::nullopt;
  return *inv * ModPow(params.g, alpha, params.N) % params.N;
}

absl::StatusOr<NonMembershipWitness> ProveNonMembership(
    const RsaParams& params, const AccumulatorState& state,
    const PrimeDigest& x, RandomSource& rng,
    std::optional<mpz_class> fixed_gamma, unsigned long shift) {
  if (state.Contains(x.value)) {
    return absl::FailedPreconditionError("non-membership: element is a member");
  }
  if (!IsGroupElement(params, state.acc)) {
    return absl::FailedPreconditionError("non-membership: acc not in G");
  }
  const mpz_class gamma_bound = mpz_class(1) << kGammaBits;
  for (int draw = 0; draw < kMaxGammaDraws; ++draw) {
    mpz_class gamma =
        fixed_gamma ? *fixed_gamma : rng.UniformBelow(gamma_bound) + 1;
    unsigned long k = fixed_gamma ? shift : draw / kDrawsPerShift;
    ASSIGN_OR_RETURN(NonMembershipExponents e,
                     ComputeNonMembershipExponents(state, x, gamma, k));
    NonMembershipWitness w;
    w.A = ModPow(params.g, (e.a + gamma * e.alpha) * e.ut, params.N);
    w.B = ModPow(params.g, -e.b * gamma * e.ut, params.N);
    mpz_class ab = w.A * ModPow(w.B, e.alpha, params.N) % params.N;
    std::optional<mpz_class> c = NonMembershipC(params, w.A, w.B, e.alpha);
    bool usable = IsGroupElement(params, w.A) && IsGroupElement(params, w.B) &&
                  IsGroupElement(params, ab) && c && IsGroupElement(params, *c);
    if (!usable) {
      if (fixed_gamma) {
        return absl::FailedPreconditionError(
            "non-membership: gamma yields a degenerate witness");
      }
      continue;
    }
    Bytes ctx = NonMemContext(state.acc, x.value);
    ASSIGN_OR_RETURN(w.pi1, ZkpokeProve(params, state.acc, w.A,
                                        e.a + gamma * e.alpha, rng, ctx));
    ASSIGN_OR_RETURN(w.pi2,
                     ZkpokeProve(params, params.g, *c, e.alpha - e.z, rng, ctx));
    ASSIGN_OR_RETURN(w.pi3, ZkaopProve(params, params.g, ab, e.z, rng, ctx));
    return w;
  }
  return absl::ResourceExhaustedError("non-membership: gamma sampling failed");
}

Bytes NonMembershipWitness::Serialize() const {
  return FieldWriter(kNonMemTag)
      .AddNat(A)
      .AddNat(B)
      .Add(pi1.Serialize())
      .Add(pi2.Serialize())
      .Add(pi3.Serialize())
      .Finish();
}

absl::StatusOr<NonMembershipWitness> NonMembershipWitness::Deserialize(
    ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kNonMemTag));
  NonMembershipWitness w;
  ASSIGN_OR_RETURN(w.A, r.NextNat());
  ASSIGN_OR_RETURN(w.B, r.NextNat());
  ASSIGN_OR_RETURN(Bytes p1, r.Next());
  ASSIGN_OR_RETURN(Bytes p2, r.Next());
  ASSIGN_OR_RETURN(Bytes p3, r.Next());
  RETURN_IF_ERROR(r.Done());
  ASSIGN_OR_RETURN(w.pi1, ZkpokeProof::Deserialize(p1));
  ASSIGN_OR_RETURN(w.pi2, ZkpokeProof::Deserialize(p2));
  ASSIGN_OR_RETURN(w.pi3, ZkaopProof::Deserialize(p3));
  return w;
}

bool RsaVerify(const RsaParams& params, const mpz_class& acc,
               const PrimeDigest& x, const AccumulatorProof& proof, int v) {
  if (acc <= 0 || acc >= params.N || x.value < 3) return false;
  if (v == 1) {
    const auto* mem = std::get_if<MembershipWitness>(&proof);
    if (mem == nullptr) return false;
    if (mem->witness <= 0 || mem->witness >= params.N) return false;
    return ModPow(mem->witness, x.value, params.N) == acc;
  }
  if (v != 0) return false;
  const auto* non = std::get_if<NonMembershipWitness>(&proof);
  if (non == nullptr) return false;
  if (!IsGroupElement(params, acc) || !IsGroupElement(params, non->A) ||
      !IsGroupElement(params, non->B)) {
    return false;
  }
  std::optional<mpz_class> c = NonMembershipC(params, non->A, non->B, x.value);
  if (!c) return false;
  mpz_class ab = non->A * ModPow(non->B, x.value, params.N) % params.N;
  Bytes ctx = NonMemContext(acc, x.value);
  // Any failing sub-proof rejects.
  return ZkpokeVerify(params, acc, non->A, non->pi1, ctx) &&
         ZkpokeVerify(params, params.g, *c, non->pi2, ctx) &&
         ZkaopVerify(params, params.g, ab, non->pi3, ctx);
}

}  // namespace pihvc
