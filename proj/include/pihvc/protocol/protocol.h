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

#ifndef PIHVC_PROTOCOL_PROTOCOL_H_
#define PIHVC_PROTOCOL_PROTOCOL_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pihvc/crypto/commitment.h"
#include "pihvc/protocol/backend.h"
#include "pihvc/protocol/issuer_set.h"
#include "pihvc/protocol/types.h"
#include "pihvc/util/random.h"

namespace pihvc {

inline constexpr size_t kNonceBytes = 32;

struct SetupOptions {
  RsaMode mode = RsaMode::kToy;
  size_t modulus_bits = 0;  // 0 selects the mode default
  std::string backend = std::string(AlgebraicBackend::kName);
};

absl::StatusOr<PublicParams> Setup(int security_bits,
                                   const SetupOptions& options,
                                   RandomSource& rng);

// Deterministic in pp. sk.rsa equals vk.rsa.
absl::StatusOr<KeyPair> Keygen(const PublicParams& pp);

// r_I = H(DID^H, r_I^0).
Bytes NonceHash(const CrhParams& crh, ByteView holder_did, ByteView r_I0);

// R = pad_{DID^H}(H(r_H || r_I1 || ... || r_IN)).
absl::StatusOr<Bytes> ComputeR(const CrhParams& crh, ByteView holder_did,
                               ByteView r_H,
                               const std::vector<Bytes>& issuer_nonces);

// Length of every R for this holder.
size_t PadLength(const CrhParams& crh, size_t holder_did_bytes);

Digest TokenHash(const CrhParams& crh, const DidToken& token);

// Fixed-length checks on the token encoding: |R| = PadLength and
// 0 < |DID^I| <= kMaxDidBytes.
absl::Status CheckTokenShape(const CrhParams& crh, ByteView holder_did,
                             const DidToken& token);

absl::StatusOr<IssuerNonce> IssuerBegin(const PublicParams& pp,
                                        const Did& issuer, const Did& holder,
                                        RandomSource& rng);

absl::StatusOr<HolderRequest> MakeHolderRequest(
    const PublicParams& pp, const Did& holder,
    const std::vector<Bytes>& issuer_nonces, RandomSource& rng);

// True iff R recomputes from (r_H, r_I) and the attributes satisfy pred.
bool IssuerValidateRequest(const PublicParams& pp, const AuthReq& request,
                           ByteView r_H, const std::vector<Bytes>& issuer_nonces,
                           const Did& holder, const Attributes& attrs,
                           const Predicate& pred);

struct QuaSecrets {
  Bytes r_I0;
  Bytes r_H;
  DidToken token;
  // Every nonce that went into R, in request order. Empty means {r_I}.
  std::vector<Bytes> request_nonces;
};

// `binding` is bound into the proof transcript; issuance passes the commitment
// leaf hash so a proof cannot move to another credential.
absl::StatusOr<QualificationBundle> ProveQua(const PublicParams& pp,
                                             const IssuerSetState& issuer_set,
                                             const Did& holder,
                                             const QuaSecrets& secrets,
                                             const SecretKey& sk,
                                             ByteView binding,
                                             RandomSource& rng);

bool VeriQua(const PublicParams& pp, ByteView holder_did,
             const PubDidToken& pub_token, ByteView r_I0, const mpz_class& acc,
             const QualificationProof& proof, const VerificationKey& vk,
             ByteView binding);

// Both checks: every bundle passes VeriQua bound to the commitment leaf, and
// the leaf is under registry_root.
bool VerifyVc(const PublicParams& pp, const VcRecord& record,
              const mpz_class& issuer_acc, const Digest& registry_root,
              int tree_height, const VerificationKey& vk);

}  // namespace pihvc

#endif  // PIHVC_PROTOCOL_PROTOCOL_H_
