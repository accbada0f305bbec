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

#include "pihvc/crypto/hash_to_prime.h"

#include "absl/status/status.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/encoding.h"

namespace pihvc {

absl::StatusOr<PrimeDigest> HashToPrime(const CrhParams& params,
                                        ByteView message) {
  Bytes msg(message.begin(), message.end());
  for (uint32_t counter = 0; counter < kHashToPrimeMaxCounter; ++counter) {
    Digest d =
        CrhHashFields(params, crh_site::kHashToPrime, {msg, EncodeU32(counter)});
    d.bytes.front() |= 0x80;
    d.bytes.back() |= 0x01;
    mpz_class candidate = NatFromBytes(d.bytes);
    if (IsProbablePrime(candidate, kPrimalityRounds)) {
      return PrimeDigest{std::move(candidate), counter};
    }
  }
  return absl::InternalError("hash_to_prime: search exhausted");
}

absl::StatusOr<PrimeDigest> PrimeFromValue(const mpz_class& value) {
  if (value < 3 || mpz_even_p(value.get_mpz_t()) ||
      !IsProbablePrime(value, kPrimalityRounds)) {
    return absl::InvalidArgumentError("not an odd prime");
  }
  return PrimeDigest{value, 0};
}

}  // namespace pihvc
