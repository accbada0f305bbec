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

#include "pihvc/accumulator/sigma.h"

#include "absl/status/status.h"
#include "pihvc/crypto/crh.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr std::string_view kProofTag = "pihvc/zkpoke";

const CrhParams& TranscriptCrh() {
  static const CrhParams* crh = new CrhParams(*CrhSetup(128));
  return *crh;
}

bool WellFormedStatement(const SigmaStatement& s) {
  for (const SigmaEquation& eq : s.equations) {
    for (const SigmaTerm& t : eq.terms) {
      if (t.witness >= s.num_witnesses) return false;
    }
  }
  return true;
}

// Mask width for a witness: its length rounded up to 64 bits, so the
// response length leaks only a coarse size class.
size_t MaskBits(const mpz_class& w) {
  size_t bits = (BitLength(abs(w)) + 63) / 64 * 64;
  if (bits == 0) bits = 64;
  return bits + kChallengeBits + kStatisticalBits;
}

}  // namespace

Bytes ZkpokeProof::Serialize() const {
  return FieldWriter(kProofTag)
      .AddNatList(commitment_msgs)
      .AddNat(challenge)
      .AddIntList(responses)
      .Finish();
}

absl::StatusOr<ZkpokeProof> ZkpokeProof::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kProofTag));
  ZkpokeProof p;
  ASSIGN_OR_RETURN(p.commitment_msgs, r.NextNatList());
  ASSIGN_OR_RETURN(p.challenge, r.NextNat());
  ASSIGN_OR_RETURN(p.responses, r.NextIntList());
  RETURN_IF_ERROR(r.Done());
  return p;
}

std::optional<mpz_class> MultiExp(const RsaParams& params,
                                  const std::vector<SigmaTerm>& terms,
                                  const std::vector<mpz_class>& exponents) {
  mpz_class acc = 1;
  for (const SigmaTerm& t : terms) {
    std::optional<mpz_class> f = ModExp(t.base, exponents[t.witness], params.N);
    if (!f) return std::nullopt;
    acc = acc * *f % params.N;
  }
  return acc;
}

mpz_class SigmaChallenge(const RsaParams& params,
                         const SigmaStatement& statement,
                         const std::vector<mpz_class>& commitment_msgs) {
  FieldWriter eqs("");
  for (const SigmaEquation& eq : statement.equations) {
    FieldWriter e("");
    e.AddNat(eq.lhs);
    for (const SigmaTerm& t : eq.terms) {
      e.AddNat(t.base);
      e.AddU32(static_cast<uint32_t>(t.witness));
    }
    eqs.Add(e.Finish());
  }
  Digest d = CrhHashFields(
      TranscriptCrh(), crh_site::kFiatShamir,
      {ToBytes(statement.label), NatToBytes(params.N), NatToBytes(params.g),
       NatToBytes(params.h), statement.context,
       EncodeU32(static_cast<uint32_t>(statement.num_witnesses)), eqs.Finish(),
       FieldWriter("").AddNatList(commitment_msgs).Finish()});
  mpz_class c = NatFromBytes(d.bytes);
  mpz_class mask = (mpz_class(1) << kChallengeBits) - 1;
  return c & mask;
}

absl::StatusOr<ZkpokeProof> SigmaProve(const RsaParams& params,
                                       const SigmaStatement& statement,
                                       const std::vector<mpz_class>& witnesses,
                                       RandomSource& rng) {
  if (witnesses.size() != statement.num_witnesses ||
      !WellFormedStatement(statement)) {
    return absl::InvalidArgumentError("sigma: malformed statement");
  }
  for (const SigmaEquation& eq : statement.equations) {
    std::optional<mpz_class> v = MultiExp(params, eq.terms, witnesses);
    if (!v || *v != eq.lhs % params.N) {
      return absl::FailedPreconditionError("sigma: relation does not hold");
    }
  }
  std::vector<mpz_class> masks(witnesses.size());
  for (size_t j = 0; j < witnesses.size(); ++j) {
    masks[j] = rng.UniformBits(MaskBits(witnesses[j]));
  }
  ZkpokeProof proof;
  for (const SigmaEquation& eq : statement.equations) {
    std::optional<mpz_class> t = MultiExp(params, eq.terms, masks);
    if (!t) return absl::InternalError("sigma: non-invertible base");
    proof.commitment_msgs.push_back(*t);
  }
  proof.challenge = SigmaChallenge(params, statement, proof.commitment_msgs);
  proof.responses.resize(witnesses.size());
  for (size_t j = 0; j < witnesses.size(); ++j) {
    proof.responses[j] = masks[j] + proof.challenge * witnesses[j];
    SecureClear(masks[j]);
  }
  return proof;
}

bool SigmaVerify(const RsaParams& params, const SigmaStatement& statement,
                 const ZkpokeProof& proof) {
  if (!WellFormedStatement(statement)) return false;
  if (proof.commitment_msgs.size() != statement.equations.size() ||
      proof.responses.size() != statement.num_witnesses) {
    return false;
  }
  for (const mpz_class& s : proof.responses) {
    if (BitLength(abs(s)) > kMaxResponseBits) return false;
  }
  for (const mpz_class& t : proof.commitment_msgs) {
    if (t <= 0 || t >= params.N) return false;
  }
  for (const SigmaEquation& eq : statement.equations) {
    if (eq.lhs <= 0 || eq.lhs >= params.N || gcd(eq.lhs, params.N) != 1) {
      return false;
    }
    for (const SigmaTerm& t : eq.terms) {
      if (!IsGroupElement(params, t.base)) return false;
    }
  }
  if (proof.challenge !=
      SigmaChallenge(params, statement, proof.commitment_msgs)) {
    return false;
  }
  for (size_t k = 0; k < statement.equations.size(); ++k) {
    const SigmaEquation& eq = statement.equations[k];
    std::optional<mpz_class> left = MultiExp(params, eq.terms, proof.responses);
    if (!left) return false;
    mpz_class right =
        proof.commitment_msgs[k] * ModPow(eq.lhs, proof.challenge, params.N) %
        params.N;
    if (*left != right) return false;
  }
  return true;
}

}  // namespace pihvc
