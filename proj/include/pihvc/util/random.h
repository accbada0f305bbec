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

#ifndef PIHVC_UTIL_RANDOM_H_
#define PIHVC_UTIL_RANDOM_H_

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <span>

#include "pihvc/util/bytes.h"

namespace pihvc {

// Source of randomness for every sampling step in the library. Protocol code
// never reaches for a global generator; it is always handed one of these.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  virtual void Fill(std::span<uint8_t> out) = 0;

  Bytes RandomBytes(size_t n);
  uint64_t NextU64();

  // Uniform in [0, 2^bits).
  mpz_class UniformBits(size_t bits);
  // Uniform in [0, bound). bound must be positive.
  mpz_class UniformBelow(const mpz_class& bound);
  // Uniform in [lo, hi]. Requires lo <= hi.
  mpz_class UniformRange(const mpz_class& lo, const mpz_class& hi);
};

// Operating-system randomness (OpenSSL RAND_bytes).
class SystemRandom final : public RandomSource {
 public:
  void Fill(std::span<uint8_t> out) override;
};

// Deterministic expandable generator: block i = SHA-256(key || i) with
// key = SHA-256("pihvc/seeded-random" || seed). Used for reproducible runs.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(ByteView seed);

  void Fill(std::span<uint8_t> out) override;

  // An independent generator keyed by (this seed, label).
  SeededRandom Fork(std::string_view label) const;

 private:
  void Refill();

  std::array<uint8_t, 32> key_{};
  uint64_t counter_ = 0;
  std::array<uint8_t, 32> block_{};
  size_t block_pos_ = 32;
};

}  // namespace pihvc

#endif  // PIHVC_UTIL_RANDOM_H_
