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

#ifndef PIHVC_ACCUMULATOR_FOUR_SQUARES_H_
#define PIHVC_ACCUMULATOR_FOUR_SQUARES_H_

#include <gmpxx.h>

#include <array>

#include "absl/status/statusor.h"
#include "pihvc/util/random.h"

namespace pihvc {

// Values below this are decomposed by a deterministic descending search.
inline constexpr unsigned long kFourSquaresBruteForceLimit = 1ul << 20;

// Returns (s1, s2, s3, s4) >= 0 with s1^2 + s2^2 + s3^2 + s4^2 = n. Small n
// use the lexicographically largest decomposition (10 -> 3,1,0,0); larger n
// use the randomized Rabin-Shallit method.
absl::StatusOr<std::array<mpz_class, 4>> FourSquares(const mpz_class& n,
                                                     RandomSource& rng);

// Writes a prime p = 1 (mod 4) as a^2 + b^2.
absl::StatusOr<std::array<mpz_class, 2>> TwoSquaresOfPrime(const mpz_class& p,
                                                           RandomSource& rng);

}  // namespace pihvc

#endif  // PIHVC_ACCUMULATOR_FOUR_SQUARES_H_
