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

#ifndef PIHVC_PROTOCOL_TYPES_H_
#define PIHVC_PROTOCOL_TYPES_H_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/accumulator/rsa_params.h"
#include "pihvc/crypto/crh.h"
#include "pihvc/crypto/hash_to_prime.h"
#include "pihvc/registry/registry.h"
#include "pihvc/util/bytes.h"

namespace pihvc {

enum class Role { kIssuer, kHolder, kVerifier };

// A method-prefixed decentralized identifier, "did:<method>:<id>".
class Did {
 public:
  static absl::StatusOr<Did> Create(std::string_view id, Role role);

  const std::string& id() const { return id_; }
  Role role() const { return role_; }
  ByteView bytes() const { return AsBytes(id_); }
  bool operator==(const Did&) const = default;

 private:
  Did(std::string id, Role role) : id_(std::move(id)), role_(role) {}
  std::string id_;
  Role role_;
};

inline constexpr size_t kMaxDidBytes = 256;

// Proof-backend parameters: the backend name and a digest of its settings.
struct NizkParams {
  std::string backend;
  Bytes id;
  bool operator==(const NizkParams&) const = default;
};

struct PublicParams {
  int security_bits = 0;
  CrhParams crh;
  RsaParams rsa;
  NizkParams nizk;

  // Public fields only; toy-mode factors are never written.
  Bytes Serialize() const;
  static absl::StatusOr<PublicParams> Deserialize(ByteView data);
};

struct ZkKey {
  Bytes id;
  bool operator==(const ZkKey&) const = default;
};

struct SecretKey {
  RsaKey rsa;
  ZkKey zk;
};

struct VerificationKey {
  RsaKey rsa;
  ZkKey zk;
  bool operator==(const VerificationKey&) const = default;
  // Digest bound into every qualification transcript.
  Bytes Id() const;
};

struct KeyPair {
  SecretKey sk;
  VerificationKey vk;
};

struct IssuerNonce {
  Bytes r_I0;
  Bytes r_I;
};

// The holder's authentication request. r_H travels next to it, not inside.
struct AuthReq {
  Bytes R;
};

struct HolderRequest {
  Bytes r_H;
  Bytes R;
  AuthReq request;
};

struct DidToken {
  Bytes issuer_did;
  Bytes R;
};

struct PubDidToken {
  Bytes r_I;
  Digest token_hash;

  Bytes Serialize() const;
  static absl::StatusOr<PubDidToken> Deserialize(ByteView data);
  bool operator==(const PubDidToken&) const = default;
};

// Private to the issuer and holder: (r_1, r_H, DID^H, DID^I) with r_1 = r_I.
struct QualificationTuple {
  Bytes r_1;
  Bytes r_H;
  Bytes holder_did;
  Bytes issuer_did;
};

// Backend-specific proof of Statement S over a public accumulator value.
struct QualificationProof {
  std::string backend;
  mpz_class acc;
  Bytes membership_part;
  Bytes link_part;

  Bytes Serialize() const;
  static absl::StatusOr<QualificationProof> Deserialize(ByteView data);
  bool operator==(const QualificationProof&) const = default;
};

// What ProveQua outputs: (DID^H, pubDIDTok, r_I^0, proof).
struct QualificationBundle {
  Bytes holder_did;
  PubDidToken pub_token;
  Bytes r_I0;
  QualificationProof proof;

  Bytes Serialize() const;
  static absl::StatusOr<QualificationBundle> Deserialize(ByteView data);
  bool operator==(const QualificationBundle&) const = default;
};

// A signature-less credential: the commitment, one qualification bundle per
// issuer and the registry path of the commitment leaf.
struct VcRecord {
  PrimeDigest commitment;
  std::vector<QualificationBundle> bundles;
  MerklePath registry_path;

  Bytes Serialize() const;
  static absl::StatusOr<VcRecord> Deserialize(ByteView data);
};

// Ordered log of protocol messages of one issuance session.
struct SessionTranscript {
  std::vector<std::pair<std::string, Bytes>> messages;

  void Record(std::string_view label, ByteView payload);
  Bytes Serialize() const;
  static absl::StatusOr<SessionTranscript> Deserialize(ByteView data);
  // First payload with this label.
  absl::StatusOr<Bytes> Find(std::string_view label) const;
};

}  // namespace pihvc

#endif  // PIHVC_PROTOCOL_TYPES_H_
