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

#include "pihvc/crypto/crh.h"

#include <openssl/evp.h>

#include <stdexcept>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/metrics.h"

namespace pihvc {
namespace {

const EVP_MD* DigestFor(size_t digest_bits) {
  switch (digest_bits) {
    case 224:
      return EVP_sha224();
    case 256:
      return EVP_sha256();
    case 384:
      return EVP_sha384();
    case 512:
      return EVP_sha512();
    default:
      return nullptr;
  }
}

Digest RawHash(const CrhParams& params, ByteView input) {
  const EVP_MD* md = DigestFor(params.digest_bits);
  if (md == nullptr) throw std::invalid_argument("CrhHash: bad digest width");
  ++ThreadCounters().hash;
  Digest d;
  d.bytes.resize(params.digest_bits / 8);
  unsigned int len = 0;
  if (EVP_Digest(input.data(), input.size(), d.bytes.data(), &len, md,
                 nullptr) != 1 ||
      len != d.bytes.size()) {
    throw std::runtime_error("EVP_Digest failed");
  }
  return d;
}

}  // namespace

absl::StatusOr<CrhParams> CrhSetup(int security_bits) {
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
  return CrhParams{std::string(kDefaultDomainTag),
                   static_cast<size_t>(2 * security_bits)};
}

Digest CrhHash(const CrhParams& params, ByteView message) {
  FieldWriter w(params.domain_tag);
  w.Add(message);
  return RawHash(params, w.Finish());
}

Digest CrhHashFields(const CrhParams& params, std::string_view site,
                     const std::vector<Bytes>& fields) {
  FieldWriter w(absl::StrCat(params.domain_tag, "/", std::string(site)));
  for (const Bytes& f : fields) w.Add(f);
  return RawHash(params, w.Finish());
}

Bytes CrhExpand(const CrhParams& params, std::string_view site,
                const std::vector<Bytes>& fields, size_t out_bytes) {
  Bytes out;
  out.reserve(out_bytes);
  std::vector<Bytes> input = fields;
  input.push_back({});
  for (uint32_t block = 0; out.size() < out_bytes; ++block) {
    input.back() = EncodeU32(block);
    Digest d = CrhHashFields(params, site, input);
    size_t take = std::min(d.bytes.size(), out_bytes - out.size());
    out.insert(out.end(), d.bytes.begin(), d.bytes.begin() + take);
  }
  return out;
}

}  // namespace pihvc
