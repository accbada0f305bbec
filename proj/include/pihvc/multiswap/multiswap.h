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

#ifndef PIHVC_MULTISWAP_MULTISWAP_H_
#define PIHVC_MULTISWAP_MULTISWAP_H_

#include <gmpxx.h>

#include <array>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/accumulator/accumulator.h"
#include "pihvc/accumulator/rsa_params.h"
#include "pihvc/accumulator/sigma.h"
#include "pihvc/crypto/crh.h"
#include "pihvc/crypto/hash_to_prime.h"
#include "pihvc/util/bytes.h"
#include "pihvc/util/random.h"

namespace pihvc {

// Batched accumulator update: remove W, insert Y and re-blind.
//
// With blinds t_before and t_after sharing the factor tau = gcd(t_before,
// t_after), the intermediate state is acc_mid = g^(u_mid * tau) where u_mid
// is the product of the untouched elements. Then
//
//   acc_before = acc_mid^(e_W),  e_W = prod(W) * t_before / tau
//   acc_after  = acc_mid^(e_Y),  e_Y = prod(Y) * t_after / tau
//
// and the proof shows knowledge of e_W and e_Y, each also opening a Pedersen
// commitment E_i = g^(e_i) * h^(rho_i) with rho_i expanded from beta_i.

struct SwapParams {
  CrhParams crh;
  bool operator==(const SwapParams&) const = default;
};

absl::StatusOr<SwapParams> SwapSetup(int security_bits);

struct SwapStatement {
  mpz_class acc_before;
  mpz_class acc_after;
  mpz_class acc_mid;
  PrimeDigest d0;  // commits to (W, beta0)
  PrimeDigest d1;  // commits to (Y, beta1)

  Bytes Serialize() const;
  static absl::StatusOr<SwapStatement> Deserialize(ByteView data);
  bool operator==(const SwapStatement&) const = default;
};

struct SwapWitness {
  std::vector<PrimeDigest> removed;
  std::vector<PrimeDigest> inserted;
  Bytes beta0;
  Bytes beta1;
  mpz_class t_before;
  mpz_class t_after;
};

// The four parts share one Fiat-Shamir challenge. pi_remove and open0 both
// carry the response for e_W; pi_insert and open1 both carry e_Y.
struct SwapProof {
  std::array<mpz_class, 2> exponent_commitments;  // E0, E1
  ZkpokeProof pi_remove;
  ZkpokeProof pi_insert;
  std::array<ZkpokeProof, 2> commitment_openproofs;

  Bytes Serialize() const;
  static absl::StatusOr<SwapProof> Deserialize(ByteView data);
};

inline constexpr size_t kSwapBetaBytes = 32;

// d = HashToPrime(encode(sorted element values) || beta).
absl::StatusOr<PrimeDigest> SwapSetCommitment(const SwapParams& params,
                                              std::vector<PrimeDigest> set,
                                              ByteView beta);

// New state over (elements \ W) u Y with blind t_after.
absl::StatusOr<AccumulatorState> ApplySwap(const RsaParams& params,
                                           const AccumulatorState& state,
                                           const std::vector<PrimeDigest>& W,
                                           const std::vector<PrimeDigest>& Y,
                                           const mpz_class& t_after);

// g^(u_mid * gcd(t_before, t_after)) for the elements of `state` outside W.
absl::StatusOr<mpz_class> SwapMidState(const RsaParams& params,
                                       const AccumulatorState& state,
                                       const std::vector<PrimeDigest>& W,
                                       const mpz_class& t_after);

absl::StatusOr<SwapProof> SwapProve(const RsaParams& rsa,
                                    const SwapParams& params,
                                    const SwapStatement& stmt,
                                    const SwapWitness& wit, RandomSource& rng);

bool SwapVerify(const RsaParams& rsa, const SwapParams& params,
                const SwapStatement& stmt, const SwapProof& proof);

// Everything an updater needs for one swap. `carried_factor` is the blind
// factor shared between the old and new blinds; `next_carried_factor` is the
// fresh factor, to be carried by the following swap.
struct SwapTransition {
  AccumulatorState after;
  mpz_class next_carried_factor;
  SwapStatement statement;
  SwapWitness witness;
};

// Samples the fresh blind factor and beta values, resampling until every
// public value is a group element.
absl::StatusOr<SwapTransition> PrepareSwap(const RsaParams& rsa,
                                           const SwapParams& params,
                                           const AccumulatorState& state,
                                           const mpz_class& carried_factor,
                                           const std::vector<PrimeDigest>& W,
                                           const std::vector<PrimeDigest>& Y,
                                           RandomSource& rng);

}  // namespace pihvc

#endif  // PIHVC_MULTISWAP_MULTISWAP_H_
