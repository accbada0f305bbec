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

#include "pihvc/protocol/backend.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pihvc/accumulator/sigma.h"
#include "pihvc/accumulator/zk.h"
#include "pihvc/protocol/protocol.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr std::string_view kContextTag = "pihvc/qua-ctx";
constexpr std::string_view kMembershipTag = "pihvc/qua-membership";
constexpr std::string_view kLinkTag = "pihvc/qua-link";
constexpr std::string_view kEscrowTag = "pihvc/qua-escrow";
constexpr std::string_view kEscrowLinkTag = "pihvc/qua-escrow-link";
constexpr int kMaxResample = 1024;

NizkParams BackendParams(std::string_view name, const CrhParams& crh,
                         const RsaParams& rsa) {
  return {std::string(name),
          CrhHashFields(crh, crh_site::kKey, {ToBytes(name), rsa.Serialize()})
              .bytes};
}

mpz_class RhoX(const PublicParams& pp, ByteView issuer_did, ByteView R) {
  size_t bytes = (pp.rsa.modulus_bits + kChallengeBits + 7) / 8;
  return NatFromBytes(CrhExpand(
      pp.crh, crh_site::kXof,
      {ToBytes("qua-rho-x"), Bytes(issuer_did.begin(), issuer_did.end()),
       Bytes(R.begin(), R.end())},
      bytes));
}

mpz_class PedersenCommit(const RsaParams& rsa, const mpz_class& x,
                         const mpz_class& rho) {
  return ModPow(rsa.g, x, rsa.N) * *ModExp(rsa.h, rho, rsa.N) % rsa.N;
}

struct MembershipPart {
  mpz_class c_x;
  mpz_class c_w;
  mpz_class w_blind;
  ZkpokeProof sigma;
  ZkaopProof range_low;
  ZkaopProof range_high;

  Bytes Serialize() const {
    return FieldWriter(kMembershipTag)
        .AddNat(c_x)
        .AddNat(c_w)
        .AddNat(w_blind)
        .Add(sigma.Serialize())
        .Add(range_low.Serialize())
        .Add(range_high.Serialize())
        .Finish();
  }

  static absl::StatusOr<MembershipPart> Deserialize(ByteView data) {
    ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kMembershipTag));
    MembershipPart m;
    ASSIGN_OR_RETURN(m.c_x, r.NextNat());
    ASSIGN_OR_RETURN(m.c_w, r.NextNat());
    ASSIGN_OR_RETURN(m.w_blind, r.NextNat());
    ASSIGN_OR_RETURN(Bytes sigma, r.Next());
    ASSIGN_OR_RETURN(Bytes low, r.Next());
    ASSIGN_OR_RETURN(Bytes high, r.Next());
    RETURN_IF_ERROR(r.Done());
    ASSIGN_OR_RETURN(m.sigma, ZkpokeProof::Deserialize(sigma));
    ASSIGN_OR_RETURN(m.range_low, ZkaopProof::Deserialize(low));
    ASSIGN_OR_RETURN(m.range_high, ZkaopProof::Deserialize(high));
    return m;
  }
};

// Witness layout: x (0), rho_x (1), r_w (2), rho_w (3), delta (4), eps (5).
SigmaStatement MembershipStatement(const RsaParams& rsa, const mpz_class& acc,
                                   const MembershipPart& m, ByteView context) {
  mpz_class g_inv = *ModInverse(rsa.g, rsa.N);
  mpz_class h_inv = *ModInverse(rsa.h, rsa.N);
  SigmaStatement s;
  s.label = "qua-membership";
  s.context.assign(context.begin(), context.end());
  s.num_witnesses = 6;
  s.equations.push_back({m.c_x, {{rsa.g, 0}, {rsa.h, 1}}});
  s.equations.push_back({m.c_w, {{rsa.g, 2}, {rsa.h, 3}}});
  s.equations.push_back({acc, {{m.w_blind, 0}, {h_inv, 4}}});
  s.equations.push_back({1, {{m.c_w, 0}, {g_inv, 4}, {h_inv, 5}}});
  return s;
}

SigmaStatement LinkStatement(const RsaParams& rsa, const mpz_class& c_x,
                             ByteView context) {
  SigmaStatement s;
  s.label = "qua-link";
  s.context.assign(context.begin(), context.end());
  s.num_witnesses = 2;
  s.equations.push_back({c_x, {{rsa.g, 0}, {rsa.h, 1}}});
  return s;
}

// C_x * g^-(2^(k-1)) and g^(2^k - 1) * C_x^-1, committing to x - 2^(k-1) and
// 2^k - 1 - x.
std::optional<std::pair<mpz_class, mpz_class>> RangeCommitments(
    const PublicParams& pp, const mpz_class& c_x) {
  const RsaParams& rsa = pp.rsa;
  size_t k = pp.crh.digest_bits;
  std::optional<mpz_class> c_inv = ModInverse(c_x, rsa.N);
  if (!c_inv) return std::nullopt;
  mpz_class lo = mpz_class(1) << (k - 1);
  mpz_class hi = (mpz_class(1) << k) - 1;
  mpz_class low = c_x * *ModExp(rsa.g, -lo, rsa.N) % rsa.N;
  mpz_class high = ModPow(rsa.g, hi, rsa.N) * *c_inv % rsa.N;
  return std::make_pair(low, high);
}

}  // namespace

Bytes QuaStatement::Context() const {
  return FieldWriter(kContextTag)
      .AddNat(acc)
      .Add(pub_token.Serialize())
      .Add(holder_did)
      .Add(key_id)
      .Add(binding)
      .Finish();
}

NizkParams AlgebraicBackend::Setup(const CrhParams& crh,
                                   const RsaParams& rsa) const {
  return BackendParams(kName, crh, rsa);
}

absl::StatusOr<QualificationProof> AlgebraicBackend::Prove(
    const PublicParams& pp, const QuaStatement& statement,
    const QuaWitness& witness, RandomSource& rng) const {
  const RsaParams& rsa = pp.rsa;
  const mpz_class& x = witness.issuer_prime.value;
  if (BitLength(x) != pp.crh.digest_bits) {
    return absl::InvalidArgumentError("qua: issuer prime has the wrong width");
  }
  Digest token_hash = TokenHash(pp.crh, {witness.issuer_did, witness.R});
  if (token_hash != statement.pub_token.token_hash) {
    return absl::FailedPreconditionError("qua: token hash does not open");
  }
  if (ModPow(witness.membership_witness, x, rsa.N) != statement.acc) {
    return absl::FailedPreconditionError("qua: issuer not accumulated in acc");
  }
  Bytes ctx = statement.Context();
  MembershipPart m;
  mpz_class rho_x = RhoX(pp, witness.issuer_did, witness.R);
  m.c_x = PedersenCommit(rsa, x, rho_x);
  mpz_class r_w, rho_w;
  for (int tries = 0;; ++tries) {
    if (tries == kMaxResample) {
      return absl::InternalError("qua: could not blind the witness");
    }
    r_w = rng.UniformBits(rsa.modulus_bits + kChallengeBits);
    rho_w = rng.UniformBits(rsa.modulus_bits + kChallengeBits);
    m.w_blind = witness.membership_witness * ModPow(rsa.h, r_w, rsa.N) % rsa.N;
    m.c_w = PedersenCommit(rsa, r_w, rho_w);
    if (IsGroupElement(rsa, m.w_blind) && IsGroupElement(rsa, m.c_w)) break;
  }
  std::vector<mpz_class> w = {x, rho_x, r_w, rho_w, r_w * x, rho_w * x};
  ASSIGN_OR_RETURN(m.sigma,
                   SigmaProve(rsa, MembershipStatement(rsa, statement.acc, m, ctx),
                              w, rng));
  auto range = RangeCommitments(pp, m.c_x);
  if (!range) return absl::InternalError("qua: commitment not invertible");
  size_t k = pp.crh.digest_bits;
  mpz_class lo = mpz_class(1) << (k - 1);
  mpz_class hi = (mpz_class(1) << k) - 1;
  ASSIGN_OR_RETURN(m.range_low, ZkaopProve(rsa, rsa.g, range->first, x - lo,
                                           rng, ctx, rho_x));
  ASSIGN_OR_RETURN(m.range_high, ZkaopProve(rsa, rsa.g, range->second, hi - x,
                                            rng, ctx, -rho_x));
  ASSIGN_OR_RETURN(ZkpokeProof link,
                   SigmaProve(rsa, LinkStatement(rsa, m.c_x, ctx), {x, rho_x},
                              rng));
  for (mpz_class& v : w) SecureClear(v);
  SecureClear(r_w);
  SecureClear(rho_w);
  SecureClear(rho_x);
  QualificationProof proof;
  proof.backend = std::string(kName);
  proof.acc = statement.acc;
  proof.membership_part = m.Serialize();
  proof.link_part = FieldWriter(kLinkTag).Add(link.Serialize()).Finish();
  return proof;
}

bool AlgebraicBackend::Verify(const PublicParams& pp,
                              const QuaStatement& statement,
                              const QualificationProof& proof) const {
  const RsaParams& rsa = pp.rsa;
  if (proof.backend != kName || proof.acc != statement.acc) return false;
  absl::StatusOr<MembershipPart> m =
      MembershipPart::Deserialize(proof.membership_part);
  if (!m.ok()) return false;
  absl::StatusOr<FieldReader> lr = FieldReader::Open(proof.link_part, kLinkTag);
  if (!lr.ok() || lr->size() != 1) return false;
  absl::StatusOr<ZkpokeProof> link = ZkpokeProof::Deserialize(*lr->Next());
  if (!link.ok()) return false;
  if (m->c_x <= 0 || m->c_x >= rsa.N) return false;
  auto range = RangeCommitments(pp, m->c_x);
  if (!range) return false;
  Bytes ctx = statement.Context();
  return SigmaVerify(rsa, MembershipStatement(rsa, statement.acc, *m, ctx),
                     m->sigma) &&
         ZkaopVerify(rsa, rsa.g, range->first, m->range_low, ctx) &&
         ZkaopVerify(rsa, rsa.g, range->second, m->range_high, ctx) &&
         SigmaVerify(rsa, LinkStatement(rsa, m->c_x, ctx), *link);
}

bool AlgebraicBackend::CheckLinkDesignated(const PublicParams& pp,
                                           const QuaStatement& statement,
                                           const QualificationProof& proof,
                                           ByteView issuer_did, ByteView R) {
  DidToken token{Bytes(issuer_did.begin(), issuer_did.end()),
                 Bytes(R.begin(), R.end())};
  if (TokenHash(pp.crh, token) != statement.pub_token.token_hash) return false;
  absl::StatusOr<MembershipPart> m =
      MembershipPart::Deserialize(proof.membership_part);
  if (!m.ok()) return false;
  absl::StatusOr<PrimeDigest> x = HashToPrime(pp.crh, issuer_did);
  if (!x.ok()) return false;
  return m->c_x == PedersenCommit(pp.rsa, x->value, RhoX(pp, issuer_did, R));
}

NizkParams TransparentBackend::Setup(const CrhParams& crh,
                                     const RsaParams& rsa) const {
  return BackendParams(kName, crh, rsa);
}

absl::StatusOr<QualificationProof> TransparentBackend::Prove(
    const PublicParams& pp, const QuaStatement& statement,
    const QuaWitness& witness, RandomSource& rng) const {
  (void)rng;
  QualificationProof proof;
  proof.backend = std::string(kName);
  proof.acc = statement.acc;
  proof.membership_part = FieldWriter(kEscrowTag)
                              .Add(witness.issuer_did)
                              .AddNat(witness.issuer_prime.value)
                              .AddU32(witness.issuer_prime.nonce)
                              .AddNat(witness.membership_witness)
                              .Finish();
  proof.link_part = FieldWriter(kEscrowLinkTag)
                        .Add(witness.R)
                        .Add(statement.Context())
                        .Finish();
  if (!Verify(pp, statement, proof)) {
    return absl::FailedPreconditionError("qua: escrowed witness is invalid");
  }
  return proof;
}

bool TransparentBackend::Verify(const PublicParams& pp,
                                const QuaStatement& statement,
                                const QualificationProof& proof) const {
  if (proof.backend != kName || proof.acc != statement.acc) return false;
  absl::StatusOr<FieldReader> mr =
      FieldReader::Open(proof.membership_part, kEscrowTag);
  absl::StatusOr<FieldReader> lr =
      FieldReader::Open(proof.link_part, kEscrowLinkTag);
  if (!mr.ok() || !lr.ok() || mr->size() != 4 || lr->size() != 2) return false;
  Bytes issuer_did = *mr->Next();
  absl::StatusOr<mpz_class> x = mr->NextNat();
  absl::StatusOr<uint32_t> nonce = mr->NextU32();
  absl::StatusOr<mpz_class> w = mr->NextNat();
  Bytes R = *lr->Next();
  Bytes ctx = *lr->Next();
  if (!x.ok() || !nonce.ok() || !w.ok()) return false;
  absl::StatusOr<PrimeDigest> expected = HashToPrime(pp.crh, issuer_did);
  if (!expected.ok() || !(*expected == PrimeDigest{*x, *nonce})) return false;
  if (*w <= 0 || *w >= pp.rsa.N) return false;
  if (ModPow(*w, *x, pp.rsa.N) != statement.acc) return false;
  if (ctx != statement.Context()) return false;
  if (!CheckTokenShape(pp.crh, statement.holder_did, {issuer_did, R}).ok()) {
    return false;
  }
  return TokenHash(pp.crh, {issuer_did, R}) == statement.pub_token.token_hash;
}

absl::StatusOr<const ProofBackend*> BackendByName(std::string_view name) {
  static const AlgebraicBackend* algebraic = new AlgebraicBackend();
  static const TransparentBackend* transparent = new TransparentBackend();
  if (name == AlgebraicBackend::kName) return algebraic;
  if (name == TransparentBackend::kName) return transparent;
  return absl::NotFoundError(
      absl::StrCat("unknown proof backend \"", std::string(name), "\""));
}

}  // namespace pihvc
