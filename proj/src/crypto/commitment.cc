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

#include "pihvc/crypto/commitment.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pihvc/util/encoding.h"
#include "pihvc/util/strings.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

bool IsDecimal(ByteView b) {
  if (b.empty()) return false;
  return std::all_of(b.begin(), b.end(),
                     [](uint8_t c) { return c >= '0' && c <= '9'; });
}

// -1, 0, 1.
int CompareValues(ByteView lhs, ByteView rhs) {
  if (IsDecimal(lhs) && IsDecimal(rhs)) {
    mpz_class a(ToString(lhs), 10);
    mpz_class b(ToString(rhs), 10);
    return a < b ? -1 : (a == b ? 0 : 1);
  }
  return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(),
                                      rhs.end())
             ? -1
             : (std::equal(lhs.begin(), lhs.end(), rhs.begin(), rhs.end()) ? 0
                                                                           : 1);
}

bool WellFormedName(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
  });
}

}  // namespace

absl::StatusOr<Bytes> Pad(ByteView holder_did, const Digest& digest) {
  if (holder_did.empty()) {
    return absl::InvalidArgumentError("pad: empty holder DID");
  }
  size_t len = std::max(digest.bytes.size(), holder_did.size());
  len = (len + 31) / 32 * 32;
  Bytes out = digest.bytes;
  for (size_t i = 0; out.size() < len; ++i) {
    out.push_back(holder_did[i % holder_did.size()]);
  }
  return out;
}

absl::StatusOr<Attributes> Attributes::Create(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (size_t i = 0; i < entries.size(); ++i) {
    if (!WellFormedName(entries[i].first)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad attribute name '", entries[i].first, "'"));
    }
    if (i > 0 && entries[i].first == entries[i - 1].first) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate attribute '", entries[i].first, "'"));
    }
  }
  Attributes a;
  a.entries_ = std::move(entries);
  return a;
}

absl::StatusOr<Attributes> Attributes::Parse(std::string_view text) {
  std::vector<Entry> entries;
  if (!text.empty()) {
    for (std::string_view part : Split(text, ',')) {
      size_t eq = part.find('=');
      if (eq == std::string_view::npos) {
        return absl::InvalidArgumentError(
            absl::StrCat("attribute without '=': ", std::string(part)));
      }
      entries.emplace_back(std::string(part.substr(0, eq)),
                           ToBytes(part.substr(eq + 1)));
    }
  }
  return Create(std::move(entries));
}

const Bytes* Attributes::Find(std::string_view name) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), name,
      [](const Entry& e, std::string_view n) { return e.first < n; });
  if (it == entries_.end() || it->first != name) return nullptr;
  return &it->second;
}

Bytes Attributes::Encode() const {
  FieldWriter w("pihvc/attrs");
  for (const Entry& e : entries_) {
    w.AddString(e.first);
    w.Add(e.second);
  }
  return w.Finish();
}

absl::StatusOr<Predicate> Predicate::Create(Kind kind,
                                            std::vector<Clause> clauses) {
  if (clauses.empty()) {
    return absl::InvalidArgumentError("predicate without clauses");
  }
  for (const Clause& c : clauses) {
    if (!WellFormedName(c.attribute)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad attribute name '", c.attribute, "'"));
    }
  }
  Predicate p;
  p.kind_ = kind;
  p.clauses_ = std::move(clauses);
  return p;
}

absl::StatusOr<Predicate> Predicate::Parse(Kind kind, std::string_view text) {
  // Longest operators first so "<=" is not read as "<".
  static constexpr std::pair<std::string_view, Comparison> kOps[] = {
      {"!=", Comparison::kNe}, {"<=", Comparison::kLe},
      {">=", Comparison::kGe}, {"=", Comparison::kEq},
      {"<", Comparison::kLt},  {">", Comparison::kGt},
  };
  std::vector<Clause> clauses;
  for (std::string_view part : Split(text, ',')) {
    size_t pos = part.find_first_of("!<>=");
    if (pos == std::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("clause without operator: ", std::string(part)));
    }
    std::string_view rest = part.substr(pos);
    const std::pair<std::string_view, Comparison>* op = nullptr;
    for (const auto& candidate : kOps) {
      if (rest.starts_with(candidate.first)) {
        op = &candidate;
        break;
      }
    }
    if (op == nullptr) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad operator in clause: ", std::string(part)));
    }
    clauses.push_back(Clause{std::string(part.substr(0, pos)), op->second,
                             ToBytes(rest.substr(op->first.size()))});
  }
  return Create(kind, std::move(clauses));
}

absl::StatusOr<bool> EvalPredicate(const Attributes& attrs,
                                   const Predicate& pred) {
  for (const Clause& c : pred.clauses()) {
    const Bytes* value = attrs.Find(c.attribute);
    if (value == nullptr) {
      return absl::NotFoundError(
          absl::StrCat("missing attribute '", c.attribute, "'"));
    }
    int cmp = CompareValues(*value, c.threshold);
    bool holds = false;
    switch (c.comparison) {
      case Comparison::kEq:
        holds = cmp == 0;
        break;
      case Comparison::kNe:
        holds = cmp != 0;
        break;
      case Comparison::kLt:
        holds = cmp < 0;
        break;
      case Comparison::kLe:
        holds = cmp <= 0;
        break;
      case Comparison::kGt:
        holds = cmp > 0;
        break;
      case Comparison::kGe:
        holds = cmp >= 0;
        break;
    }
    if (!holds) return false;
  }
  return true;
}

absl::StatusOr<Commitment> Commit(const CrhParams& params,
                                  const Attributes& attrs,
                                  const Predicate& pred, ByteView randomness) {
  if (randomness.size() < kMinCommitRandomness) {
    return absl::InvalidArgumentError("commit: randomness shorter than 32 bytes");
  }
  ASSIGN_OR_RETURN(bool ok, EvalPredicate(attrs, pred));
  if (!ok) return absl::FailedPreconditionError("commit: predicate is false");
  Bytes preimage = attrs.Encode();
  Append(preimage, randomness);
  ASSIGN_OR_RETURN(PrimeDigest value, HashToPrime(params, preimage));
  return Commitment{std::move(value), attrs,
                    Bytes(randomness.begin(), randomness.end())};
}

bool VerifyCommit(const CrhParams& params, const PrimeDigest& value,
                  const Attributes& attrs, ByteView randomness) {
  Bytes preimage = attrs.Encode();
  Append(preimage, randomness);
  absl::StatusOr<PrimeDigest> expected = HashToPrime(params, preimage);
  return expected.ok() && expected->value == value.value;
}

}  // namespace pihvc
