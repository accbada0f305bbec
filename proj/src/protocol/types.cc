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

#include "pihvc/protocol/types.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

constexpr std::string_view kParamsTag = "pihvc/public-params";
constexpr std::string_view kPubTokenTag = "pihvc/pub-token";
constexpr std::string_view kProofTag = "pihvc/qua-proof";
constexpr std::string_view kBundleTag = "pihvc/qua-bundle";
constexpr std::string_view kRecordTag = "pihvc/vc-record";
constexpr std::string_view kTranscriptTag = "pihvc/transcript";

bool IsMethodChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

}  // namespace

absl::StatusOr<Did> Did::Create(std::string_view id, Role role) {
  constexpr std::string_view kPrefix = "did:";
  if (id.size() > kMaxDidBytes) {
    return absl::InvalidArgumentError("did: identifier too long");
  }
  if (!id.starts_with(kPrefix)) {
    return absl::InvalidArgumentError(
        absl::StrCat("did: missing \"did:\" prefix in \"", std::string(id),
                     "\""));
  }
  std::string_view rest = id.substr(kPrefix.size());
  size_t colon = rest.find(':');
  if (colon == 0 || colon == std::string_view::npos ||
      colon + 1 == rest.size()) {
    return absl::InvalidArgumentError("did: expected did:<method>:<id>");
  }
  for (char c : rest.substr(0, colon)) {
    if (!IsMethodChar(c)) {
      return absl::InvalidArgumentError("did: method must be [a-z0-9]+");
    }
  }
  return Did(std::string(id), role);
}

Bytes PublicParams::Serialize() const {
  return FieldWriter(kParamsTag)
      .AddU32(static_cast<uint32_t>(security_bits))
      .AddString(crh.domain_tag)
      .AddU64(crh.digest_bits)
      .Add(rsa.Serialize())
      .AddString(nizk.backend)
      .Add(nizk.id)
      .Finish();
}

absl::StatusOr<PublicParams> PublicParams::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kParamsTag));
  PublicParams pp;
  ASSIGN_OR_RETURN(uint32_t security, r.NextU32());
  pp.security_bits = static_cast<int>(security);
  ASSIGN_OR_RETURN(pp.crh.domain_tag, r.NextString());
  ASSIGN_OR_RETURN(pp.crh.digest_bits, r.NextU64());
  ASSIGN_OR_RETURN(Bytes rsa, r.Next());
  ASSIGN_OR_RETURN(pp.nizk.backend, r.NextString());
  ASSIGN_OR_RETURN(pp.nizk.id, r.Next());
  RETURN_IF_ERROR(r.Done());
  ASSIGN_OR_RETURN(pp.rsa, RsaParams::Deserialize(rsa));
  ASSIGN_OR_RETURN(CrhParams expected, CrhSetup(pp.security_bits));
  if (pp.crh.digest_bits != expected.digest_bits || pp.crh.domain_tag.empty()) {
    return absl::InvalidArgumentError(
        "public params: CRH does not match the security level");
  }
  if (pp.nizk.backend.empty()) {
    return absl::InvalidArgumentError("public params: missing proof backend");
  }
  return pp;
}

Bytes VerificationKey::Id() const {
  static const CrhParams kCrh = *CrhSetup(128);
  return CrhHashFields(kCrh, crh_site::kKey,
                       {ToBytes("vk"), rsa.Id(), zk.id})
      .bytes;
}

Bytes PubDidToken::Serialize() const {
  return FieldWriter(kPubTokenTag).Add(r_I).Add(token_hash.bytes).Finish();
}

absl::StatusOr<PubDidToken> PubDidToken::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kPubTokenTag));
  PubDidToken t;
  ASSIGN_OR_RETURN(t.r_I, r.Next());
  ASSIGN_OR_RETURN(t.token_hash.bytes, r.Next());
  RETURN_IF_ERROR(r.Done());
  return t;
}

Bytes QualificationProof::Serialize() const {
  return FieldWriter(kProofTag)
      .AddString(backend)
      .AddNat(acc)
      .Add(membership_part)
      .Add(link_part)
      .Finish();
}

absl::StatusOr<QualificationProof> QualificationProof::Deserialize(
    ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kProofTag));
  QualificationProof p;
  ASSIGN_OR_RETURN(p.backend, r.NextString());
  ASSIGN_OR_RETURN(p.acc, r.NextNat());
  ASSIGN_OR_RETURN(p.membership_part, r.Next());
  ASSIGN_OR_RETURN(p.link_part, r.Next());
  RETURN_IF_ERROR(r.Done());
  return p;
}

Bytes QualificationBundle::Serialize() const {
  return FieldWriter(kBundleTag)
      .Add(holder_did)
      .Add(pub_token.Serialize())
      .Add(r_I0)
      .Add(proof.Serialize())
      .Finish();
}

absl::StatusOr<QualificationBundle> QualificationBundle::Deserialize(
    ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kBundleTag));
  QualificationBundle b;
  ASSIGN_OR_RETURN(b.holder_did, r.Next());
  ASSIGN_OR_RETURN(Bytes token, r.Next());
  ASSIGN_OR_RETURN(b.r_I0, r.Next());
  ASSIGN_OR_RETURN(Bytes proof, r.Next());
  RETURN_IF_ERROR(r.Done());
  ASSIGN_OR_RETURN(b.pub_token, PubDidToken::Deserialize(token));
  ASSIGN_OR_RETURN(b.proof, QualificationProof::Deserialize(proof));
  return b;
}

Bytes VcRecord::Serialize() const {
  std::vector<Bytes> items;
  for (const QualificationBundle& b : bundles) items.push_back(b.Serialize());
  return FieldWriter(kRecordTag)
      .AddNat(commitment.value)
      .AddU32(commitment.nonce)
      .AddList(items)
      .Add(registry_path.Serialize())
      .Finish();
}

absl::StatusOr<VcRecord> VcRecord::Deserialize(ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kRecordTag));
  VcRecord rec;
  ASSIGN_OR_RETURN(rec.commitment.value, r.NextNat());
  ASSIGN_OR_RETURN(rec.commitment.nonce, r.NextU32());
  ASSIGN_OR_RETURN(std::vector<Bytes> items, r.NextList());
  ASSIGN_OR_RETURN(Bytes path, r.Next());
  RETURN_IF_ERROR(r.Done());
  for (const Bytes& item : items) {
    ASSIGN_OR_RETURN(QualificationBundle b, QualificationBundle::Deserialize(item));
    rec.bundles.push_back(std::move(b));
  }
  ASSIGN_OR_RETURN(rec.registry_path, MerklePath::Deserialize(path));
  return rec;
}

void SessionTranscript::Record(std::string_view label, ByteView payload) {
  messages.emplace_back(std::string(label), Bytes(payload.begin(), payload.end()));
}

Bytes SessionTranscript::Serialize() const {
  std::vector<Bytes> items;
  for (const auto& [label, payload] : messages) {
    items.push_back(FieldWriter("").AddString(label).Add(payload).Finish());
  }
  return FieldWriter(kTranscriptTag).AddList(items).Finish();
}

absl::StatusOr<SessionTranscript> SessionTranscript::Deserialize(
    ByteView data) {
  ASSIGN_OR_RETURN(FieldReader r, FieldReader::Open(data, kTranscriptTag));
  ASSIGN_OR_RETURN(std::vector<Bytes> items, r.NextList());
  RETURN_IF_ERROR(r.Done());
  SessionTranscript t;
  for (const Bytes& item : items) {
    ASSIGN_OR_RETURN(FieldReader f, FieldReader::Open(item, ""));
    ASSIGN_OR_RETURN(std::string label, f.NextString());
    ASSIGN_OR_RETURN(Bytes payload, f.Next());
    RETURN_IF_ERROR(f.Done());
    t.messages.emplace_back(std::move(label), std::move(payload));
  }
  return t;
}

absl::StatusOr<Bytes> SessionTranscript::Find(std::string_view label) const {
  for (const auto& [l, payload] : messages) {
    if (l == label) return payload;
  }
  return absl::NotFoundError(
      absl::StrCat("transcript: no message labelled ", std::string(label)));
}

}  // namespace pihvc
