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

// Reference implementations used to check the library. They share no code
// with src/: modular exponentiation is plain square-and-multiply, primality
// is a hand-written Miller-Rabin, hashing frames bytes by hand and calls
// OpenSSL's one-shot SHA-256 directly.

#ifndef PIHVC_TESTS_ORACLE_H_
#define PIHVC_TESTS_ORACLE_H_

#include <gmpxx.h>
#include <openssl/sha.h>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace pihvc::oracle {

using Buf = std::vector<uint8_t>;

inline mpz_class PowMod(mpz_class base, mpz_class exp, const mpz_class& m) {
  mpz_class result = 1;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (mpz_odd_p(exp.get_mpz_t())) result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result % m;
}

inline bool MillerRabin(const mpz_class& n, int rounds, uint64_t seed = 7) {
  if (n < 2) return false;
  for (int small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == small) return true;
    if (n % small == 0) return false;
  }
  mpz_class d = n - 1;
  int s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  std::mt19937_64 gen(seed);
  for (int i = 0; i < rounds; ++i) {
    mpz_class a = 2;
    for (int limb = 0; limb < 8; ++limb) a = (a << 64) + mpz_class(std::to_string(gen()));
    a = a % (n - 3) + 2;
    mpz_class x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Iterative extended Euclid: returns (g, a, b) with a*x + b*y = g.
inline void ExtGcd(mpz_class x, mpz_class y, mpz_class& g, mpz_class& a,
                   mpz_class& b) {
  mpz_class a0 = 1, b0 = 0, a1 = 0, b1 = 1;
  while (y != 0) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    mpz_class r = x - q * y;
    x = y;
    y = r;
    mpz_class t = a0 - q * a1;
    a0 = a1;
    a1 = t;
    t = b0 - q * b1;
    b0 = b1;
    b1 = t;
  }
  g = x;
  a = a0;
  b = b0;
}

inline void PutBe32(Buf& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back((v >> shift) & 0xff);
}

// tag || be32(count) || (be32(len) || field)*
inline Buf Frame(const std::string& tag, const std::vector<Buf>& fields) {
  Buf out(tag.begin(), tag.end());
  PutBe32(out, static_cast<uint32_t>(fields.size()));
  for (const Buf& f : fields) {
    PutBe32(out, static_cast<uint32_t>(f.size()));
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

inline Buf Sha256(const Buf& in) {
  Buf out(32);
  SHA256(in.data(), in.size(), out.data());
  return out;
}

inline Buf Str(const std::string& s) { return Buf(s.begin(), s.end()); }

inline Buf Be32(uint32_t v) {
  Buf b;
  PutBe32(b, v);
  return b;
}

inline mpz_class ToInt(const Buf& b) {
  mpz_class v = 0;
  for (uint8_t c : b) v = v * 256 + c;
  return v;
}

inline Buf FromInt(mpz_class v) {
  Buf out;
  while (v > 0) {
    out.insert(out.begin(), static_cast<uint8_t>(mpz_class(v % 256).get_ui()));
    v /= 256;
  }
  return out;
}

// SHA-256 under the 128-bit parameters' site framing.
inline Buf SiteHash(const std::string& site, const std::vector<Buf>& fields) {
  return Sha256(Frame("pihvc/v1/" + site, fields));
}

// Dense Merkle root over 2^height leaves; unset leaves are the null leaf.
inline Buf MerkleRoot(int height, const std::map<uint64_t, Buf>& leaves) {
  Buf null_leaf = SiteHash("null-leaf", {});
  std::vector<Buf> level(size_t{1} << height, null_leaf);
  for (const auto& [index, leaf] : leaves) level[index] = leaf;
  for (int l = 0; l < height; ++l) {
    std::vector<Buf> next(level.size() / 2);
    for (size_t i = 0; i < next.size(); ++i) {
      next[i] = SiteHash("node", {level[2 * i], level[2 * i + 1]});
    }
    level = std::move(next);
  }
  return level[0];
}

// Same root computed recursively, descending only into non-empty subtrees.
inline Buf SparseMerkleRoot(int height, const std::map<uint64_t, Buf>& leaves) {
  std::vector<Buf> empty = {SiteHash("null-leaf", {})};
  for (int l = 1; l <= height; ++l) empty.push_back(SiteHash("node", {empty.back(), empty.back()}));
  auto rec = [&](auto&& self, int level, uint64_t lo) -> Buf {
    uint64_t width = uint64_t{1} << level;
    auto it = leaves.lower_bound(lo);
    if (it == leaves.end() || it->first >= lo + width) return empty[level];
    if (level == 0) return it->second;
    return SiteHash("node", {self(self, level - 1, lo), self(self, level - 1, lo + width / 2)});
  };
  return rec(rec, height, 0);
}

}  // namespace pihvc::oracle

#endif  // PIHVC_TESTS_ORACLE_H_
