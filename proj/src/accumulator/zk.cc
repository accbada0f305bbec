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

#include "pihvc/accumulator/zk.h"

#include "absl/status/status.h"
#include "pihvc/accumulator/four_squares.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr std::string_view kZkaopTag = "pihvc/zkaop";
constexpr int kMaxResample = 1024;

SigmaStatement PokeStatement(const mpz_class& base, const mpz_class& result,
                             ByteView context) {
  SigmaStatement s;
  s.label = "zkpoke";
  s.context.assign(context.begin(), context.end());
  s.num_witnesses = 1;
  s.equations.push_back({result, {{base, 0}}});
  return s;
}

// Witness layout: s1..s4 (0..3), rho1..rho4 (4..7), combined blinding (8).
SigmaStatement AopStatement(const RsaParams& params, const mpz_class& base,
                            const mpz_class& commitment,
                            const std::array<mpz_class, 4>& d,
                            ByteView context) {
  SigmaStatement s;
  s.label = "zkaop";
  s.context.assign(context.begin(), context.end());
  s.num_witnesses = 9;
  SigmaEquation link{commitment, {}};
  for (size_t i = 0; i < 4; ++i) {
    s.equations.push_back({d[i], {{base, i}, {params.h, 4 + i}}});
    link.terms.push_back({d[i], i});
  }
  link.terms.push_back({params.h, 8});
  s.equations.push_back(std::move(link));
  return s;
}

}  // namespace

absl::StatusOr<ZkpokeProof> ZkpokeProve(const RsaParams& params,
                                        const mpz_class& base,
                                        const mpz_class& result,
                                        const mpz_class& exponent,
                                        RandomSource& rng, ByteView context) {
  if (!IsGroupElement(params, base) || !IsGroupElement(params, result)) {
    return absl::InvalidArgumentError("zkpoke: base and result must be in G");
  }
  return SigmaProve(params, PokeStatement(base, result, context), {exponent},
                    rng);
}

bool ZkpokeVerify(const RsaParams& params, const mpz_class& base,
                  const mpz_class& result, const ZkpokeProof& proof,
                  ByteView context) {
  if (!IsGroupElement(params, base) || !IsGroupElement(params, result)) {
    return false;
  }
  return SigmaVerify(params, PokeStatement(base, result, context), proof);
}

Bytes ZkaopProof::Serialize() const {
  return FieldWriter(kZkaopTag)
      .AddNatList({square_commitments.begin(), square_commitments.end()})
      .Add(linkage.Serialize())
      .Finish();
}

absl::StatusOr<ZkaopProof> ZkaopProof::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kZkaopTag));
  ASSIGN_OR_RETURN(std::vector<mpz_class> d, r.NextNatList());
  ASSIGN_OR_RETURN(Bytes linkage, r.Next());
  RETURN_IF_ERROR(r.Done());
  if (d.size() != 4) return absl::InvalidArgumentError("zkaop: need 4 squares");
  ZkaopProof p;
  std::copy(d.begin(), d.end(), p.square_commitments.begin());
  ASSIGN_OR_RETURN(p.linkage, ZkpokeProof::Deserialize(linkage));
  return p;
}

absl::StatusOr<ZkaopProof> ZkaopProve(const RsaParams& params,
                                      const mpz_class& base,
                                      const mpz_class& commitment,
                                      const mpz_class& exponent,
                                      RandomSource& rng, ByteView context,
                                      const mpz_class& blinding) {
  if (exponent < 0) return absl::InvalidArgumentError("zkaop: negative exponent");
  if (!IsGroupElement(params, base)) {
    return absl::InvalidArgumentError("zkaop: base must be in G");
  }
  ASSIGN_OR_RETURN(auto squares, FourSquares(exponent, rng));
  std::vector<mpz_class> w(9);
  ZkaopProof proof;
  mpz_class combined = blinding;
  for (size_t i = 0; i < 4; ++i) {
    w[i] = squares[i];
    mpz_class d;
    for (int tries = 0;; ++tries) {
      if (tries == kMaxResample) {
        return absl::InternalError("zkaop: degenerate square commitment");
      }
      w[4 + i] = rng.UniformBits(params.modulus_bits + kChallengeBits);
      d = ModPow(base, w[i], params.N) * ModPow(params.h, w[4 + i], params.N) %
          params.N;
      if (IsGroupElement(params, d)) break;
    }
    proof.square_commitments[i] = d;
    combined -= w[i] * w[4 + i];
  }
  w[8] = combined;
  ASSIGN_OR_RETURN(proof.linkage,
                   SigmaProve(params,
                              AopStatement(params, base, commitment,
                                           proof.square_commitments, context),
                              w, rng));
  for (mpz_class& v : w) SecureClear(v);
  return proof;
}

bool ZkaopVerify(const RsaParams& params, const mpz_class& base,
                 const mpz_class& commitment, const ZkaopProof& proof,
                 ByteView context) {
  if (!IsGroupElement(params, base)) return false;
  return SigmaVerify(params,
                     AopStatement(params, base, commitment,
                                  proof.square_commitments, context),
                     proof.linkage);
}

}  // namespace pihvc
