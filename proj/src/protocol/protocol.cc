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

#include "pihvc/protocol/protocol.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

bool VkMatches(const PublicParams& pp, const VerificationKey& vk) {
  return vk.rsa == RsaKey{pp.rsa.N, pp.rsa.g, pp.rsa.h} &&
         vk.zk.id == pp.nizk.id;
}

}  // namespace

absl::StatusOr<PublicParams> Setup(int security_bits,
                                   const SetupOptions& options,
                                   RandomSource& rng) {
  PublicParams pp;
  pp.security_bits = security_bits;
  ASSIGN_OR_RETURN(pp.crh, CrhSetup(security_bits));
  ASSIGN_OR_RETURN(const ProofBackend* backend, BackendByName(options.backend));
  RsaSetupOptions rsa_options;
  rsa_options.mode = options.mode;
  rsa_options.modulus_bits = options.modulus_bits;
  ASSIGN_OR_RETURN(pp.rsa, RsaSetup(security_bits, rsa_options, rng));
  pp.nizk = backend->Setup(pp.crh, pp.rsa);
  return pp;
}

absl::StatusOr<KeyPair> Keygen(const PublicParams& pp) {
  if (pp.crh.digest_bits == 0 || pp.crh.domain_tag.empty()) {
    return absl::InvalidArgumentError("keygen: missing CRH parameters");
  }
  if (pp.rsa.N == 0 || pp.rsa.g == 0 || pp.rsa.h == 0) {
    return absl::InvalidArgumentError("keygen: missing RSA parameters");
  }
  if (pp.nizk.backend.empty() || pp.nizk.id.empty()) {
    return absl::InvalidArgumentError("keygen: missing proof-backend parameters");
  }
  RsaKeyPair rsa = RsaKeygen(pp.rsa);
  ZkKey zk{pp.nizk.id};
  return KeyPair{SecretKey{rsa.sk, zk}, VerificationKey{rsa.vk, zk}};
}

Bytes NonceHash(const CrhParams& crh, ByteView holder_did, ByteView r_I0) {
  return CrhHashFields(crh, crh_site::kNonce,
                       {Bytes(holder_did.begin(), holder_did.end()),
                        Bytes(r_I0.begin(), r_I0.end())})
      .bytes;
}

absl::StatusOr<Bytes> ComputeR(const CrhParams& crh, ByteView holder_did,
                               ByteView r_H,
                               const std::vector<Bytes>& issuer_nonces) {
  if (issuer_nonces.empty()) {
    return absl::InvalidArgumentError("request: no issuer nonces");
  }
  std::vector<Bytes> fields = {Bytes(r_H.begin(), r_H.end())};
  fields.insert(fields.end(), issuer_nonces.begin(), issuer_nonces.end());
  return Pad(holder_did, CrhHashFields(crh, crh_site::kRequest, fields));
}

size_t PadLength(const CrhParams& crh, size_t holder_did_bytes) {
  size_t len = std::max(crh.digest_bits / 8, holder_did_bytes);
  return (len + 31) / 32 * 32;
}

Digest TokenHash(const CrhParams& crh, const DidToken& token) {
  return CrhHashFields(crh, crh_site::kToken, {token.issuer_did, token.R});
}

absl::Status CheckTokenShape(const CrhParams& crh, ByteView holder_did,
                             const DidToken& token) {
  if (token.issuer_did.empty() || token.issuer_did.size() > kMaxDidBytes) {
    return absl::InvalidArgumentError("token: issuer DID length out of range");
  }
  if (holder_did.empty() ||
      token.R.size() != PadLength(crh, holder_did.size())) {
    return absl::InvalidArgumentError("token: R has the wrong length");
  }
  return absl::OkStatus();
}

absl::StatusOr<IssuerNonce> IssuerBegin(const PublicParams& pp,
                                        const Did& issuer, const Did& holder,
                                        RandomSource& rng) {
  if (issuer.role() != Role::kIssuer) {
    return absl::PermissionDeniedError("issuer_begin: caller is not an issuer");
  }
  if (holder.role() != Role::kHolder) {
    return absl::InvalidArgumentError("issuer_begin: counterpart is not a holder");
  }
  IssuerNonce n;
  n.r_I0 = rng.RandomBytes(kNonceBytes);
  n.r_I = NonceHash(pp.crh, holder.bytes(), n.r_I0);
  return n;
}

absl::StatusOr<HolderRequest> MakeHolderRequest(
    const PublicParams& pp, const Did& holder,
    const std::vector<Bytes>& issuer_nonces, RandomSource& rng) {
  if (holder.role() != Role::kHolder) {
    return absl::PermissionDeniedError("holder_request: caller is not a holder");
  }
  if (issuer_nonces.empty()) {
    return absl::InvalidArgumentError("holder_request: no issuer nonces");
  }
  HolderRequest req;
  req.r_H = rng.RandomBytes(kNonceBytes);
  ASSIGN_OR_RETURN(req.R,
                   ComputeR(pp.crh, holder.bytes(), req.r_H, issuer_nonces));
  req.request.R = req.R;
  return req;
}

bool IssuerValidateRequest(const PublicParams& pp, const AuthReq& request,
                           ByteView r_H, const std::vector<Bytes>& issuer_nonces,
                           const Did& holder, const Attributes& attrs,
                           const Predicate& pred) {
  absl::StatusOr<Bytes> R = ComputeR(pp.crh, holder.bytes(), r_H, issuer_nonces);
  if (!R.ok() || *R != request.R) return false;
  absl::StatusOr<bool> ok = EvalPredicate(attrs, pred);
  return ok.ok() && *ok;
}

absl::StatusOr<QualificationBundle> ProveQua(const PublicParams& pp,
                                             const IssuerSetState& issuer_set,
                                             const Did& holder,
                                             const QuaSecrets& secrets,
                                             const SecretKey& sk,
                                             ByteView binding,
                                             RandomSource& rng) {
  const DidToken& token = secrets.token;
  RETURN_IF_ERROR(CheckTokenShape(pp.crh, holder.bytes(), token));
  if (!(sk.rsa == RsaKey{pp.rsa.N, pp.rsa.g, pp.rsa.h}) ||
      sk.zk.id != pp.nizk.id) {
    return absl::InvalidArgumentError("prove_qua: key does not match params");
  }
  ASSIGN_OR_RETURN(const ProofBackend* backend,
                   BackendByName(pp.nizk.backend));
  Bytes r_I = NonceHash(pp.crh, holder.bytes(), secrets.r_I0);
  std::vector<Bytes> nonces = secrets.request_nonces;
  if (nonces.empty()) nonces.push_back(r_I);
  if (std::find(nonces.begin(), nonces.end(), r_I) == nonces.end()) {
    return absl::InvalidArgumentError("prove_qua: request does not use r_I");
  }
  ASSIGN_OR_RETURN(Bytes R,
                   ComputeR(pp.crh, holder.bytes(), secrets.r_H, nonces));
  if (R != token.R) {
    return absl::InvalidArgumentError("prove_qua: R does not recompute");
  }
  std::string issuer = ToString(token.issuer_did);
  if (!issuer_set.Contains(issuer)) {
    return absl::FailedPreconditionError(
        "prove_qua: issuer is not in the issuer set");
  }
  ASSIGN_OR_RETURN(PrimeDigest x, HashToPrime(pp.crh, token.issuer_did));
  ASSIGN_OR_RETURN(MembershipWitness w,
                   ProveMembership(pp.rsa, issuer_set.acc_state, x));

  QualificationBundle bundle;
  bundle.holder_did = Bytes(holder.bytes().begin(), holder.bytes().end());
  bundle.pub_token = {r_I, TokenHash(pp.crh, token)};
  bundle.r_I0 = secrets.r_I0;
  QuaStatement statement{issuer_set.acc(), bundle.pub_token, bundle.holder_did,
                         VerificationKey{sk.rsa, sk.zk}.Id(),
                         Bytes(binding.begin(), binding.end())};
  QuaWitness witness{token.issuer_did, token.R, x, w.witness};
  ASSIGN_OR_RETURN(bundle.proof,
                   backend->Prove(pp, statement, witness, rng));
  return bundle;
}

bool VeriQua(const PublicParams& pp, ByteView holder_did,
             const PubDidToken& pub_token, ByteView r_I0, const mpz_class& acc,
             const QualificationProof& proof, const VerificationKey& vk,
             ByteView binding) {
  // Line 1: r_I = H(DID^H, r_I^0).
  if (NonceHash(pp.crh, holder_did, r_I0) != pub_token.r_I) return false;
  // Line 2: the proof of Statement S.
  if (!VkMatches(pp, vk)) return false;
  if (proof.backend != pp.nizk.backend || proof.acc != acc) return false;
  absl::StatusOr<const ProofBackend*> backend = BackendByName(proof.backend);
  if (!backend.ok()) return false;
  QuaStatement statement{acc, pub_token,
                         Bytes(holder_did.begin(), holder_did.end()), vk.Id(),
                         Bytes(binding.begin(), binding.end())};
  return (*backend)->Verify(pp, statement, proof);
}

bool VerifyVc(const PublicParams& pp, const VcRecord& record,
              const mpz_class& issuer_acc, const Digest& registry_root,
              int tree_height, const VerificationKey& vk) {
  if (record.bundles.empty()) return false;
  Digest leaf = LeafHash(pp.crh, record.commitment);
  for (const QualificationBundle& b : record.bundles) {
    if (!VeriQua(pp, b.holder_did, b.pub_token, b.r_I0, issuer_acc, b.proof,
                 vk, leaf.bytes)) {
      return false;
    }
  }
  return VerifyLeaf(pp.crh, registry_root, leaf, record.registry_path,
                    tree_height);
}

}  // namespace pihvc
