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

#ifndef PIHVC_ACCUMULATOR_RSA_PARAMS_H_
#define PIHVC_ACCUMULATOR_RSA_PARAMS_H_

#include <gmpxx.h>

#include <cstddef>

#include "absl/status/statusor.h"
#include "pihvc/util/bytes.h"
#include "pihvc/util/random.h"

namespace pihvc {

enum class RsaMode { kToy, kProduction };

inline constexpr size_t kMinToyModulusBits = 16;
inline constexpr size_t kDefaultToyModulusBits = 64;
inline constexpr size_t kMinProductionModulusBits = 2048;

// Group of quadratic residues modulo N = p' * q' with safe primes p', q'.
// Toy mode keeps the factors so tests can check group-order facts; production
// mode clears them once setup is done.
struct RsaParams {
  mpz_class N;
  mpz_class g;
  mpz_class h;
  size_t modulus_bits = 0;
  RsaMode mode = RsaMode::kToy;
  mpz_class p_safe;  // p' (toy mode only, else 0)
  mpz_class q_safe;  // q' (toy mode only, else 0)

  // Public part only: (N, g, h, modulus_bits, mode).
  Bytes Serialize() const;
  static absl::StatusOr<RsaParams> Deserialize(ByteView data);

  bool SamePublic(const RsaParams& o) const {
    return N == o.N && g == o.g && h == o.h && modulus_bits == o.modulus_bits;
  }
};

struct RsaSetupOptions {
  RsaMode mode = RsaMode::kToy;
  // 0 selects the mode default (64 for toy, 2048 for production).
  size_t modulus_bits = 0;
  // Candidate budget for each safe prime before giving up.
  size_t max_candidates = 1u << 24;
};

absl::StatusOr<RsaParams> RsaSetup(int security_bits,
                                   const RsaSetupOptions& options,
                                   RandomSource& rng);

// Builds toy parameters from Sophie Germain primes p, q (p' = 2p+1,
// q' = 2q+1) with g = g_root^2 and h = h_root^2 mod N.
absl::StatusOr<RsaParams> RsaSetupFromPrimes(const mpz_class& p,
                                             const mpz_class& q,
                                             const mpz_class& g_root,
                                             const mpz_class& h_root);

// A safe prime p' = 2p + 1 of exactly `bits` bits.
absl::StatusOr<mpz_class> GenerateSafePrime(size_t bits, RandomSource& rng,
                                            size_t max_candidates);

// The accumulator keys are the public group description; signing and
// verification keys coincide.
struct RsaKey {
  mpz_class N;
  mpz_class g;
  mpz_class h;

  bool operator==(const RsaKey&) const = default;
  // Short identifier for transcripts: hash of (N, g, h).
  Bytes Id() const;
};

struct RsaKeyPair {
  RsaKey sk;
  RsaKey vk;
};

RsaKeyPair RsaKeygen(const RsaParams& params);

// 1 < v < N - 1, gcd(v, N) = 1 and Jacobi(v, N) = 1.
bool IsGroupElement(const RsaParams& params, const mpz_class& v);

}  // namespace pihvc

#endif  // PIHVC_ACCUMULATOR_RSA_PARAMS_H_
