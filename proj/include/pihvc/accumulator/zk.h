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

#ifndef PIHVC_ACCUMULATOR_ZK_H_
#define PIHVC_ACCUMULATOR_ZK_H_

#include <gmpxx.h>

#include <array>

#include "absl/status/statusor.h"
#include "pihvc/accumulator/rsa_params.h"
#include "pihvc/accumulator/sigma.h"
#include "pihvc/util/bytes.h"
#include "pihvc/util/random.h"

namespace pihvc {

// Proof of knowledge of e with base^e = result. Both base and result must be
// group elements. `context` is bound into the challenge.
absl::StatusOr<ZkpokeProof> ZkpokeProve(const RsaParams& params,
                                        const mpz_class& base,
                                        const mpz_class& result,
                                        const mpz_class& exponent,
                                        RandomSource& rng,
                                        ByteView context = {});

bool ZkpokeVerify(const RsaParams& params, const mpz_class& base,
                  const mpz_class& result, const ZkpokeProof& proof,
                  ByteView context = {});

// Argument that the exponent committed in commitment = base^z * h^blinding is
// non-negative. The prover writes z = s1^2 + s2^2 + s3^2 + s4^2, publishes
// D_i = base^s_i * h^rho_i and proves
//   D_i = base^s_i * h^rho_i                       (i = 1..4)
//   commitment = prod D_i^s_i * h^(blinding - sum s_i * rho_i)
// in one sigma proof.
struct ZkaopProof {
  std::array<mpz_class, 4> square_commitments;
  ZkpokeProof linkage;

  Bytes Serialize() const;
  static absl::StatusOr<ZkaopProof> Deserialize(ByteView data);
  bool operator==(const ZkaopProof&) const = default;
};

absl::StatusOr<ZkaopProof> ZkaopProve(const RsaParams& params,
                                      const mpz_class& base,
                                      const mpz_class& commitment,
                                      const mpz_class& exponent,
                                      RandomSource& rng, ByteView context = {},
                                      const mpz_class& blinding = 0);

bool ZkaopVerify(const RsaParams& params, const mpz_class& base,
                 const mpz_class& commitment, const ZkaopProof& proof,
                 ByteView context = {});

}  // namespace pihvc

#endif  // PIHVC_ACCUMULATOR_ZK_H_
