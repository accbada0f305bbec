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

#ifndef PIHVC_CRYPTO_CRH_H_
#define PIHVC_CRYPTO_CRH_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/util/bytes.h"

namespace pihvc {

// Collision-resistant hash parameters. The digest is SHA-2 at twice the
// security level (SHA-224, SHA-256, SHA-384 or SHA-512).
struct CrhParams {
  std::string domain_tag;
  size_t digest_bits = 0;

  int security_bits() const { return static_cast<int>(digest_bits / 2); }
  bool operator==(const CrhParams&) const = default;
};

struct Digest {
  Bytes bytes;

  bool operator==(const Digest&) const = default;
  auto operator<=>(const Digest&) const = default;
};

inline constexpr std::string_view kDefaultDomainTag = "pihvc/v1";

// Call sites with their own domain separation.
namespace crh_site {
inline constexpr std::string_view kNonce = "nonce";
inline constexpr std::string_view kRequest = "request";
inline constexpr std::string_view kToken = "token";
inline constexpr std::string_view kLeaf = "leaf";
inline constexpr std::string_view kNode = "node";
inline constexpr std::string_view kNullLeaf = "null-leaf";
inline constexpr std::string_view kHashToPrime = "h2p";
inline constexpr std::string_view kFiatShamir = "fs";
inline constexpr std::string_view kXof = "xof";
inline constexpr std::string_view kRecord = "record";
inline constexpr std::string_view kKey = "key";
}  // namespace crh_site

// Accepts security_bits in {112, 128, 192, 256}.
absl::StatusOr<CrhParams> CrhSetup(int security_bits);

// H(encode(domain_tag, [message])).
Digest CrhHash(const CrhParams& params, ByteView message);

// H(encode(domain_tag + "/" + site, fields)). Every protocol hash goes through
// this so distinct uses never share an input space.
Digest CrhHashFields(const CrhParams& params, std::string_view site,
                     const std::vector<Bytes>& fields);

// Expands (site, fields) into `out_bytes` bytes by hashing with a block
// counter appended as the last field.
Bytes CrhExpand(const CrhParams& params, std::string_view site,
                const std::vector<Bytes>& fields, size_t out_bytes);

}  // namespace pihvc

#endif  // PIHVC_CRYPTO_CRH_H_
