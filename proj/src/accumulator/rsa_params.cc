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

#include "pihvc/accumulator/rsa_params.h"

#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pihvc/crypto/crh.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr std::string_view kParamsTag = "pihvc/rsa-params";
constexpr uint32_t kSieveLimit = 1u << 16;
constexpr size_t kSieveWindow = 1u << 14;

const std::vector<uint32_t>& SmallPrimes() {
  static const std::vector<uint32_t>* primes = [] {
    std::vector<bool> composite(kSieveLimit, false);
    auto* out = new std::vector<uint32_t>;
    for (uint32_t i = 3; i < kSieveLimit; i += 2) {
      if (composite[i]) continue;
      out->push_back(i);
      for (uint64_t j = uint64_t{i} * i; j < kSieveLimit; j += 2 * i) {
        composite[j] = true;
      }
    }
    return out;
  }();
  return *primes;
}

bool FermatBase2(const mpz_class& n) {
  mpz_class two = 2;
  return ModPow(two, n - 1, n) == 1;
}

bool IsSafePrimePair(const mpz_class& p) {
  mpz_class sp = 2 * p + 1;
  return FermatBase2(p) && FermatBase2(sp) && IsProbablePrime(p) &&
         IsProbablePrime(sp);
}

// Samples r^2 mod N with full order p*q in QR_N, distinct from `avoid`.
mpz_class SampleGenerator(const mpz_class& N, const mpz_class& p,
                          const mpz_class& q, const mpz_class& avoid,
                          RandomSource& rng) {
  while (true) {
    mpz_class r = rng.UniformRange(2, N - 2);
    mpz_class v = r * r % N;
    if (v == 1 || v == N - 1 || v == avoid) continue;
    if (gcd(v, N) != 1) continue;
    if (ModPow(v, p, N) == 1 || ModPow(v, q, N) == 1) continue;
    return v;
  }
}

}  // namespace

absl::StatusOr<mpz_class> GenerateSafePrime(size_t bits, RandomSource& rng,
                                            size_t max_candidates) {
  if (bits < 3) return absl::InvalidArgumentError("safe prime too small");
  // Search over p with bits-1 bits; p' = 2p+1 then has exactly `bits` bits.
  const size_t pbits = bits - 1;
  mpz_class top = mpz_class(1) << (pbits - 1);
  size_t tried = 0;
  if (pbits < 24) {
    while (tried < max_candidates) {
      mpz_class p = top + rng.UniformBits(pbits - 1);
      ++tried;
      if (pbits > 1) p |= 1;
      if (IsProbablePrime(p) && IsProbablePrime(2 * p + 1)) return 2 * p + 1;
    }
    return absl::DeadlineExceededError("safe prime search exhausted");
  }
  const std::vector<uint32_t>& primes = SmallPrimes();
  std::vector<bool> bad(kSieveWindow);
  while (tried < max_candidates) {
    mpz_class base = top + rng.UniformBits(pbits - 1);
    base |= 1;
    std::fill(bad.begin(), bad.end(), false);
    // Candidates are base + 2k. Mark k where s divides p or 2p + 1.
    for (uint32_t s : primes) {
      uint64_t r = mpz_fdiv_ui(base.get_mpz_t(), s);
      uint64_t inv2 = (s + 1) / 2;
      // p = base + 2k = 0 (mod s)  =>  k = -r * inv2.
      uint64_t k1 = (s - r) % s * inv2 % s;
      // 2p + 1 = 0  =>  p = -inv2  =>  k = (-inv2 - r) * inv2.
      uint64_t k2 = ((2 * s - inv2 - r) % s) * inv2 % s;
      for (uint64_t k = k1; k < kSieveWindow; k += s) bad[k] = true;
      for (uint64_t k = k2; k < kSieveWindow; k += s) bad[k] = true;
    }
    for (size_t k = 0; k < kSieveWindow && tried < max_candidates; ++k) {
      if (bad[k]) continue;
      ++tried;
      mpz_class p = base + 2 * k;
      if (BitLength(p) != pbits) break;
      if (IsSafePrimePair(p)) return 2 * p + 1;
    }
  }
  return absl::DeadlineExceededError("safe prime search exhausted");
}

absl::StatusOr<RsaParams> RsaSetup(int security_bits,
                                   const RsaSetupOptions& options,
                                   RandomSource& rng) {
  switch (security_bits) {
    case 112:
    case 128:
    case 192:
    case 256:
      break;
    default:
      return absl::InvalidArgumentError(
          absl::StrCat("unsupported security level: ", security_bits));
  }
  size_t bits = options.modulus_bits;
  if (bits == 0) {
    bits = options.mode == RsaMode::kToy ? kDefaultToyModulusBits
                                         : kMinProductionModulusBits;
  }
  if (options.mode == RsaMode::kToy && bits < kMinToyModulusBits) {
    return absl::InvalidArgumentError("toy modulus must have >= 16 bits");
  }
  if (options.mode == RsaMode::kProduction &&
      bits < kMinProductionModulusBits) {
    return absl::InvalidArgumentError(
        "production modulus must have >= 2048 bits");
  }
  const size_t half = bits / 2;
  while (true) {
    ASSIGN_OR_RETURN(mpz_class sp,
                     GenerateSafePrime(half, rng, options.max_candidates));
    ASSIGN_OR_RETURN(mpz_class sq, GenerateSafePrime(bits - half, rng,
                                                     options.max_candidates));
    if (sp == sq) continue;
    mpz_class N = sp * sq;
    if (BitLength(N) != bits) continue;
    mpz_class p = (sp - 1) / 2;
    mpz_class q = (sq - 1) / 2;
    RsaParams params;
    params.N = N;
    params.modulus_bits = bits;
    params.mode = options.mode;
    params.g = SampleGenerator(N, p, q, 0, rng);
    params.h = SampleGenerator(N, p, q, params.g, rng);
    if (options.mode == RsaMode::kToy) {
      params.p_safe = sp;
      params.q_safe = sq;
    } else {
      SecureClear(sp);
      SecureClear(sq);
    }
    SecureClear(p);
    SecureClear(q);
    return params;
  }
}

absl::StatusOr<RsaParams> RsaSetupFromPrimes(const mpz_class& p,
                                             const mpz_class& q,
                                             const mpz_class& g_root,
                                             const mpz_class& h_root) {
  if (p == q || !IsProbablePrime(p) || !IsProbablePrime(q) ||
      !IsProbablePrime(2 * p + 1) || !IsProbablePrime(2 * q + 1)) {
    return absl::InvalidArgumentError("p, q must be distinct Sophie Germain primes");
  }
  RsaParams params;
  params.p_safe = 2 * p + 1;
  params.q_safe = 2 * q + 1;
  params.N = params.p_safe * params.q_safe;
  params.modulus_bits = BitLength(params.N);
  params.mode = RsaMode::kToy;
  params.g = g_root * g_root % params.N;
  params.h = h_root * h_root % params.N;
  if (!IsGroupElement(params, params.g) || !IsGroupElement(params, params.h) ||
      params.g == params.h) {
    return absl::InvalidArgumentError("bad generator roots");
  }
  return params;
}

Bytes RsaParams::Serialize() const {
  return FieldWriter(kParamsTag)
      .AddNat(N)
      .AddNat(g)
      .AddNat(h)
      .AddU64(modulus_bits)
      .AddU32(mode == RsaMode::kToy ? 0 : 1)
      .Finish();
}

absl::StatusOr<RsaParams> RsaParams::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kParamsTag));
  RsaParams p;
  ASSIGN_OR_RETURN(p.N, r.NextNat());
  ASSIGN_OR_RETURN(p.g, r.NextNat());
  ASSIGN_OR_RETURN(p.h, r.NextNat());
  ASSIGN_OR_RETURN(uint64_t bits, r.NextU64());
  ASSIGN_OR_RETURN(uint32_t mode, r.NextU32());
  RETURN_IF_ERROR(r.Done());
  if (mode > 1) return absl::InvalidArgumentError("bad RSA mode");
  p.modulus_bits = bits;
  p.mode = mode == 0 ? RsaMode::kToy : RsaMode::kProduction;
  if (p.N < 15 || BitLength(p.N) != bits || !IsGroupElement(p, p.g) ||
      !IsGroupElement(p, p.h) || p.g == p.h) {
    return absl::InvalidArgumentError("invalid RSA parameters");
  }
  return p;
}

Bytes RsaKey::Id() const {
  static const CrhParams kCrh = *CrhSetup(128);
  return CrhHashFields(kCrh, crh_site::kKey,
                       {ToBytes("rsa"), NatToBytes(N), NatToBytes(g),
                        NatToBytes(h)})
      .bytes;
}

RsaKeyPair RsaKeygen(const RsaParams& params) {
  RsaKey key{params.N, params.g, params.h};
  return RsaKeyPair{key, key};
}

bool IsGroupElement(const RsaParams& params, const mpz_class& v) {
  if (v <= 1 || v >= params.N - 1) return false;
  if (gcd(v, params.N) != 1) return false;
  return mpz_jacobi(v.get_mpz_t(), params.N.get_mpz_t()) == 1;
}

}  // namespace pihvc
