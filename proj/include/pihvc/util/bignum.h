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

#ifndef PIHVC_UTIL_BIGNUM_H_
#define PIHVC_UTIL_BIGNUM_H_

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

#include "pihvc/util/bytes.h"

namespace pihvc {

// Big-endian magnitude, minimal length. Zero encodes as the empty string.
Bytes NatToBytes(const mpz_class& v);
// Big-endian, left-padded with zeros to exactly `len` bytes. Requires that v
// fits.
Bytes NatToFixed(const mpz_class& v, size_t len);
mpz_class NatFromBytes(ByteView b);

size_t BitLength(const mpz_class& v);

// base^exp mod m, counted in ThreadCounters().modexp. A negative exponent
// uses the modular inverse of base; returns std::nullopt if it does not exist.
std::optional<mpz_class> ModExp(const mpz_class& base, const mpz_class& exp,
                                const mpz_class& m);
// ModExp for exponents known to be non-negative.
mpz_class ModPow(const mpz_class& base, const mpz_class& exp,
                 const mpz_class& m);
std::optional<mpz_class> ModInverse(const mpz_class& a, const mpz_class& m);

bool IsProbablePrime(const mpz_class& v, int reps = 64);

// Product of all values using a balanced tree. Empty input yields 1.
mpz_class Product(std::span<const mpz_class> values);

// Extended gcd: returns g and sets a, b with a*x + b*y = g.
mpz_class ExtendedGcd(const mpz_class& x, const mpz_class& y, mpz_class& a,
                      mpz_class& b);

// Overwrites the limbs of v before releasing it.
void SecureClear(mpz_class& v);

}  // namespace pihvc

#endif  // PIHVC_UTIL_BIGNUM_H_
