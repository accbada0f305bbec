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

#ifndef PIHVC_CRYPTO_HASH_TO_PRIME_H_
#define PIHVC_CRYPTO_HASH_TO_PRIME_H_

#include <gmpxx.h>

#include <cstdint>

#include "absl/status/statusor.h"
#include "pihvc/crypto/crh.h"
#include "pihvc/util/bytes.h"

namespace pihvc {

// A prime produced by HashToPrime, or any odd prime >= 3 supplied directly
// (small primes are used over toy groups).
struct PrimeDigest {
  mpz_class value;
  uint32_t nonce = 0;

  bool operator==(const PrimeDigest& o) const {
    return value == o.value && nonce == o.nonce;
  }
};

inline bool PrimeLess(const PrimeDigest& a, const PrimeDigest& b) {
  return a.value < b.value;
}

inline constexpr uint32_t kHashToPrimeMaxCounter = 1u << 16;
inline constexpr int kPrimalityRounds = 64;

// candidate_i = CrhHashFields(params, "h2p", [message, u32be(i)]) read as a
// big-endian integer with its top and bottom bits set; returns the first
// probable prime and its counter.
absl::StatusOr<PrimeDigest> HashToPrime(const CrhParams& params,
                                        ByteView message);

// Wraps a known odd prime, e.g. for toy-group tests.
absl::StatusOr<PrimeDigest> PrimeFromValue(const mpz_class& value);

}  // namespace pihvc

#endif  // PIHVC_CRYPTO_HASH_TO_PRIME_H_
