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

#include "pihvc/util/bignum.h"

#include <cstring>
#include <stdexcept>

#include "pihvc/util/metrics.h"

namespace pihvc {

Bytes NatToBytes(const mpz_class& v) {
  if (v < 0) throw std::invalid_argument("NatToBytes: negative");
  if (v == 0) return {};
  size_t len = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  Bytes out(len);
  size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(written);
  return out;
}

Bytes NatToFixed(const mpz_class& v, size_t len) {
  Bytes raw = NatToBytes(v);
  if (raw.size() > len) throw std::invalid_argument("NatToFixed: too large");
  Bytes out(len - raw.size(), 0);
  Append(out, raw);
  return out;
}

mpz_class NatFromBytes(ByteView b) {
  mpz_class v;
  if (!b.empty()) mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
  return v;
}

size_t BitLength(const mpz_class& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::optional<mpz_class> ModInverse(const mpz_class& a, const mpz_class& m) {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  return inv;
}

std::optional<mpz_class> ModExp(const mpz_class& base, const mpz_class& exp,
                                const mpz_class& m) {
  ++ThreadCounters().modexp;
  mpz_class b = base;
  mpz_class e = exp;
  if (e < 0) {
    std::optional<mpz_class> inv = ModInverse(base, m);
    if (!inv) return std::nullopt;
    b = *inv;
    e = -e;
  }
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class ModPow(const mpz_class& base, const mpz_class& exp,
                 const mpz_class& m) {
  if (exp < 0) throw std::invalid_argument("ModPow: negative exponent");
  return *ModExp(base, exp, m);
}

bool IsProbablePrime(const mpz_class& v, int reps) {
  if (v < 2) return false;
  return mpz_probab_prime_p(v.get_mpz_t(), reps) != 0;
}

mpz_class Product(std::span<const mpz_class> values) {
  if (values.empty()) return 1;
  if (values.size() == 1) return values[0];
  size_t mid = values.size() / 2;
  mpz_class left = Product(values.subspan(0, mid));
  mpz_class right = Product(values.subspan(mid));
  return left * right;
}

mpz_class ExtendedGcd(const mpz_class& x, const mpz_class& y, mpz_class& a,
                      mpz_class& b) {
  mpz_class g;
  mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), x.get_mpz_t(),
             y.get_mpz_t());
  return g;
}

void SecureClear(mpz_class& v) {
  mpz_ptr p = v.get_mpz_t();
  size_t limbs = mpz_size(p);
  if (limbs > 0) {
    volatile mp_limb_t* d = mpz_limbs_modify(p, limbs);
    for (size_t i = 0; i < limbs; ++i) d[i] = 0;
  }
  v = 0;
}

}  // namespace pihvc
