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

#include "pihvc/accumulator/four_squares.h"

#include <cmath>
#include <optional>

#include "absl/status/status.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr int kMaxAttempts = 1 << 20;
constexpr unsigned long kWindow = 1ul << 16;

uint64_t ISqrt(uint64_t n) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Largest-first search over k non-increasing squares, each at most cap^2.
bool SearchSquares(uint64_t n, int k, uint64_t cap, uint64_t* out) {
  if (k == 0) return n == 0;
  for (uint64_t s = std::min(ISqrt(n), cap);; --s) {
    // The other k-1 squares are at most s^2 each; smaller s only makes the
    // shortfall worse.
    if ((k - 1) * s * s < n - s * s) break;
    out[0] = s;
    if (SearchSquares(n - s * s, k - 1, s, out + 1)) return true;
    if (s == 0) break;
  }
  return false;
}

std::optional<std::array<mpz_class, 2>> SmallTwoSquares(uint64_t n) {
  uint64_t out[2];
  if (!SearchSquares(n, 2, ISqrt(n), out)) return std::nullopt;
  return std::array<mpz_class, 2>{out[0], out[1]};
}

}  // namespace

absl::StatusOr<std::array<mpz_class, 2>> TwoSquaresOfPrime(const mpz_class& p,
                                                           RandomSource& rng) {
  if (p == 2) return std::array<mpz_class, 2>{1, 1};
  if (p % 4 != 1) return absl::InvalidArgumentError("p != 1 mod 4");
  // Find s with s^2 = -1 (mod p).
  mpz_class e = (p - 1) / 4;
  mpz_class s;
  for (int i = 0;; ++i) {
    if (i > 256) return absl::InternalError("no square root of -1 found");
    mpz_class c = rng.UniformRange(2, p - 2);
    s = ModPow(c, e, p);
    if (s * s % p == p - 1) break;
  }
  // Euclid on (p, s) stops at the first remainder below sqrt(p).
  mpz_class a = p;
  mpz_class b = s;
  while (b * b > p) {
    mpz_class r = a % b;
    a = b;
    b = r;
  }
  mpz_class rest = p - b * b;
  mpz_class c;
  mpz_sqrt(c.get_mpz_t(), rest.get_mpz_t());
  if (c * c != rest) return absl::InternalError("two-squares reduction failed");
  return std::array<mpz_class, 2>{b, c};
}

absl::StatusOr<std::array<mpz_class, 4>> FourSquares(const mpz_class& n,
                                                     RandomSource& rng) {
  if (n < 0) return absl::InvalidArgumentError("four squares: negative input");
  if (n < kFourSquaresBruteForceLimit) {
    uint64_t v = n.get_ui();
    uint64_t out[4] = {0, 0, 0, 0};
    if (!SearchSquares(v, 4, ISqrt(v), out)) {
      return absl::InternalError("four squares: search failed");
    }
    return std::array<mpz_class, 4>{out[0], out[1], out[2], out[3]};
  }
  if (n % 4 == 0) {
    ASSIGN_OR_RETURN(auto half, FourSquares(n / 4, rng));
    for (mpz_class& s : half) s *= 2;
    return half;
  }
  // Pick x, y a little below their square roots, so p = n - x^2 - y^2 stays
  // near n^(1/4), with the parity that makes p = 1 (mod 4). Split p into two
  // squares when it is prime. The windows widen if candidates run short.
  unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 4);
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  auto below = [&rng](const mpz_class& top, int attempt) {
    mpz_class window = mpz_class(kWindow) << (attempt / 256);
    if (window > top + 1) window = top + 1;
    return mpz_class(top - rng.UniformBelow(window));
  };
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    mpz_class x = below(root, attempt);
    mpz_class rem = n - x * x;
    mpz_class root2;
    mpz_sqrt(root2.get_mpz_t(), rem.get_mpz_t());
    mpz_class y = below(root2, attempt);
    bool x_odd = mpz_odd_p(x.get_mpz_t());
    bool y_odd = mpz_odd_p(y.get_mpz_t());
    if (r == 1 && (x_odd || y_odd)) continue;
    if (r == 3 && !(x_odd && y_odd)) continue;
    if (r == 2 && x_odd == y_odd) continue;
    mpz_class p = rem - y * y;
    std::optional<std::array<mpz_class, 2>> ab;
    if (p < kFourSquaresBruteForceLimit) {
      ab = SmallTwoSquares(p.get_ui());
    } else if (IsProbablePrime(p, 2)) {
      absl::StatusOr<std::array<mpz_class, 2>> two = TwoSquaresOfPrime(p, rng);
      if (two.ok()) ab = *two;
    }
    if (!ab) continue;
    std::array<mpz_class, 4> out{x, y, (*ab)[0], (*ab)[1]};
    if (out[0] * out[0] + out[1] * out[1] + out[2] * out[2] +
            out[3] * out[3] ==
        n) {
      return out;
    }
  }
  return absl::InternalError("four squares: attempts exhausted");
}

}  // namespace pihvc
