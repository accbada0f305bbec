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

#ifndef PIHVC_PROTOCOL_BACKEND_H_
#define PIHVC_PROTOCOL_BACKEND_H_

#include <gmpxx.h>

#include <string_view>

#include "absl/status/statusor.h"
#include "pihvc/protocol/types.h"
#include "pihvc/util/bytes.h"
#include "pihvc/util/random.h"

namespace pihvc {

// Statement S. Public: acc, the public token (r_I, token hash), the holder
// DID, the verification-key id and a binding string (the commitment leaf
// hash). Private: the issuer DID and R, from which token_hash is derived.
struct QuaStatement {
  mpz_class acc;
  PubDidToken pub_token;
  Bytes holder_did;
  Bytes key_id;
  Bytes binding;

  // Canonical encoding of every public field, bound into proofs.
  Bytes Context() const;
};

struct QuaWitness {
  Bytes issuer_did;
  Bytes R;
  PrimeDigest issuer_prime;
  mpz_class membership_witness;  // W with W^x = acc
};

// Three-operation contract every proof backend implements.
class ProofBackend {
 public:
  virtual ~ProofBackend() = default;
  virtual std::string_view name() const = 0;
  virtual NizkParams Setup(const CrhParams& crh, const RsaParams& rsa) const = 0;
  virtual absl::StatusOr<QualificationProof> Prove(
      const PublicParams& pp, const QuaStatement& statement,
      const QuaWitness& witness, RandomSource& rng) const = 0;
  virtual bool Verify(const PublicParams& pp, const QuaStatement& statement,
                      const QualificationProof& proof) const = 0;
};

// Sigma-protocol backend.
//
// membership_part: a Pedersen commitment C_x = g^x h^rho_x to the issuer
// prime x, a blinded witness W' = W h^r_w with C_w = g^r_w h^rho_w, and one
// proof of
//   C_x = g^x h^rho_x,  C_w = g^r_w h^rho_w,
//   acc = W'^x h^-delta,  1 = C_w^x g^-delta h^-epsilon,
// plus two positivity arguments showing 2^(k-1) <= x < 2^k for k-bit primes.
//
// link_part: a proof of knowledge of the opening of C_x under the token
// context. rho_x is expanded from (DID^I, R), so a party that knows the
// issuer and R (the holder) can check the link with CheckLinkDesignated.
class AlgebraicBackend final : public ProofBackend {
 public:
  static constexpr std::string_view kName = "algebraic";
  std::string_view name() const override { return kName; }
  NizkParams Setup(const CrhParams& crh, const RsaParams& rsa) const override;
  absl::StatusOr<QualificationProof> Prove(const PublicParams& pp,
                                           const QuaStatement& statement,
                                           const QuaWitness& witness,
                                           RandomSource& rng) const override;
  bool Verify(const PublicParams& pp, const QuaStatement& statement,
              const QualificationProof& proof) const override;

  // Holder-side check: token_hash = H(DID^I, R) and C_x opens to
  // (h_DI(DID^I), rho_x(DID^I, R)).
  static bool CheckLinkDesignated(const PublicParams& pp,
                                  const QuaStatement& statement,
                                  const QualificationProof& proof,
                                  ByteView issuer_did, ByteView R);
};

// Escrow backend for tests: the proof carries the witness in the clear and
// the verifier re-derives the relation. It hides nothing.
class TransparentBackend final : public ProofBackend {
 public:
  static constexpr std::string_view kName = "transparent";
  std::string_view name() const override { return kName; }
  NizkParams Setup(const CrhParams& crh, const RsaParams& rsa) const override;
  absl::StatusOr<QualificationProof> Prove(const PublicParams& pp,
                                           const QuaStatement& statement,
                                           const QuaWitness& witness,
                                           RandomSource& rng) const override;
  bool Verify(const PublicParams& pp, const QuaStatement& statement,
              const QualificationProof& proof) const override;
};

// Looks up a built-in backend by name.
absl::StatusOr<const ProofBackend*> BackendByName(std::string_view name);

}  // namespace pihvc

#endif  // PIHVC_PROTOCOL_BACKEND_H_
