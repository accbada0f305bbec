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

#ifndef PIHVC_ACCUMULATOR_ACCUMULATOR_H_
#define PIHVC_ACCUMULATOR_ACCUMULATOR_H_

#include <gmpxx.h>

#include <optional>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/accumulator/rsa_params.h"
#include "pihvc/accumulator/sigma.h"
#include "pihvc/accumulator/zk.h"
#include "pihvc/crypto/hash_to_prime.h"
#include "pihvc/util/bytes.h"
#include "pihvc/util/random.h"

namespace pihvc {

// acc = g^(u * t) mod N where u is the product of the element primes and t is
// a blinding factor coprime to u. Elements are kept sorted by value.
struct AccumulatorState {
  std::vector<PrimeDigest> elements;
  mpz_class u;
  mpz_class t;
  mpz_class acc;

  bool Contains(const mpz_class& value) const;
};

// Blinds are the product of two factors, each odd in [3, 2^64) and coprime
// to u. Keeping one factor across an update lets the intermediate state of a
// swap stay blinded.
inline constexpr size_t kBlindFactorBits = 64;

mpz_class SampleBlindFactor(RandomSource& rng, const mpz_class& u);
mpz_class SampleBlind(RandomSource& rng, const mpz_class& u);

absl::StatusOr<AccumulatorState> ComAcc(const RsaParams& params,
                                        std::vector<PrimeDigest> elements,
                                        const mpz_class& t);

struct MembershipWitness {
  mpz_class witness;

  Bytes Serialize() const;
  static absl::StatusOr<MembershipWitness> Deserialize(ByteView data);
};

// witness = g^(alpha * t) with alpha the product of the other elements.
absl::StatusOr<MembershipWitness> ProveMembership(const RsaParams& params,
                                                  const AccumulatorState& state,
                                                  const PrimeDigest& x);

// Integer quantities behind a non-membership witness for alpha = x:
//   a * ut + b * alpha = 1 with 0 < a < alpha (so b <= 0),
//   A = g^((a + gamma*alpha) ut), B = g^(-b gamma ut),
//   z = ut (a + gamma*alpha - b gamma alpha), the exponent of A * B^alpha,
//   C = (A B^alpha)^-1 g^alpha = g^(alpha - z).
struct NonMembershipExponents {
  mpz_class ut;
  mpz_class alpha;
  mpz_class a;
  mpz_class b;
  mpz_class gamma;
  mpz_class z;
};

// The Bezout pair is the one with 0 < a < alpha, moved by `shift` steps of
// (a + alpha, b - u*t).
absl::StatusOr<NonMembershipExponents> ComputeNonMembershipExponents(
    const AccumulatorState& state, const PrimeDigest& x,
    const mpz_class& gamma, unsigned long shift = 0);

// gamma is drawn from [1, 2^64].
inline constexpr size_t kGammaBits = 64;

struct NonMembershipWitness {
  mpz_class A;
  mpz_class B;
  ZkpokeProof pi1;  // acc^(a + gamma*alpha) = A
  ZkpokeProof pi2;  // g^(alpha - z) = C
  ZkaopProof pi3;   // A * B^alpha = g^z with z >= 0

  Bytes Serialize() const;
  static absl::StatusOr<NonMembershipWitness> Deserialize(ByteView data);
};

// Draws gamma until A, B, C and A * B^alpha are all group elements, moving
// to the next Bezout pair every kDrawsPerShift draws. With `fixed_gamma`
// set, uses that value and `shift` and fails if they are degenerate.
inline constexpr int kDrawsPerShift = 16;
absl::StatusOr<NonMembershipWitness> ProveNonMembership(
    const RsaParams& params, const AccumulatorState& state,
    const PrimeDigest& x, RandomSource& rng,
    std::optional<mpz_class> fixed_gamma = std::nullopt,
    unsigned long shift = 0);

// C = (A * B^alpha)^-1 * g^alpha, or nullopt if not invertible.
std::optional<mpz_class> NonMembershipC(const RsaParams& params,
                                        const mpz_class& A, const mpz_class& B,
                                        const mpz_class& alpha);

using AccumulatorProof = std::variant<MembershipWitness, NonMembershipWitness>;

// v = 1 checks membership (witness^x = acc); v = 0 checks non-membership.
// A proof variant that does not match v is rejected.
bool RsaVerify(const RsaParams& params, const mpz_class& acc,
               const PrimeDigest& x, const AccumulatorProof& proof, int v);

}  // namespace pihvc

#endif  // PIHVC_ACCUMULATOR_ACCUMULATOR_H_
