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

#ifndef PIHVC_ACCUMULATOR_SIGMA_H_
#define PIHVC_ACCUMULATOR_SIGMA_H_

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/accumulator/rsa_params.h"
#include "pihvc/util/bytes.h"
#include "pihvc/util/random.h"

namespace pihvc {

// Fiat-Shamir proof of knowledge of integer exponents satisfying a system of
// multi-exponentiation equations in QR_N:
//
//   lhs_k = prod_i base_{k,i} ^ w_{witness(k,i)}   (mod N)
//
// Witnesses are signed integers shared across equations. Masks are drawn
// statistically larger than c * w, responses are s = r + c * w over the
// integers and the challenge is 128 bits.
struct SigmaTerm {
  mpz_class base;
  size_t witness;
};

struct SigmaEquation {
  mpz_class lhs;
  std::vector<SigmaTerm> terms;
};

struct SigmaStatement {
  std::string label;
  Bytes context;
  size_t num_witnesses = 0;
  std::vector<SigmaEquation> equations;
};

struct ZkpokeProof {
  std::vector<mpz_class> commitment_msgs;
  mpz_class challenge;
  std::vector<mpz_class> responses;

  Bytes Serialize() const;
  static absl::StatusOr<ZkpokeProof> Deserialize(ByteView data);
  bool operator==(const ZkpokeProof&) const = default;
};

inline constexpr size_t kChallengeBits = 128;
inline constexpr size_t kStatisticalBits = 80;
// Responses longer than this are rejected outright.
inline constexpr size_t kMaxResponseBits = 1u << 22;

// Fails if the witnesses do not satisfy every equation.
absl::StatusOr<ZkpokeProof> SigmaProve(const RsaParams& params,
                                       const SigmaStatement& statement,
                                       const std::vector<mpz_class>& witnesses,
                                       RandomSource& rng);

bool SigmaVerify(const RsaParams& params, const SigmaStatement& statement,
                 const ZkpokeProof& proof);

mpz_class SigmaChallenge(const RsaParams& params,
                         const SigmaStatement& statement,
                         const std::vector<mpz_class>& commitment_msgs);

// prod base^exp mod N with signed exponents; nullopt if an inverse is missing.
std::optional<mpz_class> MultiExp(const RsaParams& params,
                                  const std::vector<SigmaTerm>& terms,
                                  const std::vector<mpz_class>& exponents);

}  // namespace pihvc

#endif  // PIHVC_ACCUMULATOR_SIGMA_H_
