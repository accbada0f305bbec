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

#ifndef PIHVC_CRYPTO_COMMITMENT_H_
#define PIHVC_CRYPTO_COMMITMENT_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/crypto/crh.h"
#include "pihvc/crypto/hash_to_prime.h"
#include "pihvc/util/bytes.h"

namespace pihvc {

// Pads `digest` to max(len(digest), len(holder_did)) rounded up to a multiple
// of 32 bytes. The digest comes first; the filler cycles through the holder
// DID bytes, so the map is injective for a fixed DID.
absl::StatusOr<Bytes> Pad(ByteView holder_did, const Digest& digest);

// Attribute list, sorted by name with unique names.
class Attributes {
 public:
  using Entry = std::pair<std::string, Bytes>;

  Attributes() = default;
  // Sorts `entries`; fails on duplicate or empty names.
  static absl::StatusOr<Attributes> Create(std::vector<Entry> entries);
  // "name=value,name=value".
  static absl::StatusOr<Attributes> Parse(std::string_view text);

  const std::vector<Entry>& entries() const { return entries_; }
  const Bytes* Find(std::string_view name) const;

  Bytes Encode() const;

 private:
  std::vector<Entry> entries_;
};

enum class Comparison { kEq, kNe, kLt, kLe, kGt, kGe };

struct Clause {
  std::string attribute;
  Comparison comparison;
  Bytes threshold;
};

// Conjunction of threshold clauses. Values compare numerically when both
// sides are non-empty decimal strings, bytewise otherwise.
class Predicate {
 public:
  enum class Kind { kBirth, kDeath };

  static absl::StatusOr<Predicate> Create(Kind kind, std::vector<Clause> clauses);
  // Comma-separated clauses, e.g. "age>=18,country=NL". Operators: = != < <=
  // > >=.
  static absl::StatusOr<Predicate> Parse(Kind kind, std::string_view text);

  Kind kind() const { return kind_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

 private:
  Kind kind_ = Kind::kBirth;
  std::vector<Clause> clauses_;
};

absl::StatusOr<bool> EvalPredicate(const Attributes& attrs,
                                   const Predicate& pred);

inline constexpr size_t kMinCommitRandomness = 32;

// The opening stays with the holder and is never serialized into public
// structures.
struct Commitment {
  PrimeDigest value;
  Attributes attrs;
  Bytes randomness;
};

// value = HashToPrime(attrs.Encode() || randomness). Fails if the predicate
// does not hold or the randomness is shorter than 32 bytes.
absl::StatusOr<Commitment> Commit(const CrhParams& params,
                                  const Attributes& attrs,
                                  const Predicate& pred, ByteView randomness);

bool VerifyCommit(const CrhParams& params, const PrimeDigest& value,
                  const Attributes& attrs, ByteView randomness);

}  // namespace pihvc

#endif  // PIHVC_CRYPTO_COMMITMENT_H_
