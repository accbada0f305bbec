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

#ifndef PIHVC_UTIL_ENCODING_H_
#define PIHVC_UTIL_ENCODING_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/util/bytes.h"

namespace pihvc {

// Canonical encoding used before every hash and for every wire format:
//
//   tag || u32be(field_count) || for each field: u32be(len) || bytes
//
// The tag is raw bytes with no length prefix; decoders know the tag they
// expect. Non-negative integers are minimal big-endian magnitudes (zero is the
// empty string). Signed integers are a sign byte (0 or 1) followed by the
// magnitude. Nested structures and lists are encoded recursively and stored as
// a single field.
class FieldWriter {
 public:
  explicit FieldWriter(std::string_view tag) : tag_(ToBytes(tag)) {}

  FieldWriter& Add(ByteView field);
  FieldWriter& AddString(std::string_view s) { return Add(AsBytes(s)); }
  FieldWriter& AddU32(uint32_t v);
  FieldWriter& AddU64(uint64_t v);
  FieldWriter& AddNat(const mpz_class& v);
  FieldWriter& AddInt(const mpz_class& v);
  FieldWriter& AddBool(bool v) { return AddU32(v ? 1 : 0); }
  // A list of byte strings, as a nested encoding with an empty tag.
  FieldWriter& AddList(const std::vector<Bytes>& items);
  FieldWriter& AddNatList(const std::vector<mpz_class>& items);
  FieldWriter& AddIntList(const std::vector<mpz_class>& items);

  size_t field_count() const { return fields_.size(); }
  Bytes Finish() const;

 private:
  Bytes tag_;
  std::vector<Bytes> fields_;
};

class FieldReader {
 public:
  // Fails unless `data` starts with `tag` and the field framing consumes the
  // input exactly.
  static absl::StatusOr<FieldReader> Open(ByteView data, std::string_view tag);

  size_t size() const { return fields_.size(); }
  size_t remaining() const { return fields_.size() - pos_; }

  absl::StatusOr<Bytes> Next();
  absl::StatusOr<std::string> NextString();
  absl::StatusOr<uint32_t> NextU32();
  absl::StatusOr<uint64_t> NextU64();
  absl::StatusOr<mpz_class> NextNat();
  absl::StatusOr<mpz_class> NextInt();
  absl::StatusOr<bool> NextBool();
  absl::StatusOr<std::vector<Bytes>> NextList();
  absl::StatusOr<std::vector<mpz_class>> NextNatList();
  absl::StatusOr<std::vector<mpz_class>> NextIntList();

  // OK iff every field was consumed.
  absl::Status Done() const;

 private:
  explicit FieldReader(std::vector<Bytes> fields) : fields_(std::move(fields)) {}

  std::vector<Bytes> fields_;
  size_t pos_ = 0;
};

Bytes EncodeU32(uint32_t v);
Bytes EncodeNat(const mpz_class& v);
absl::StatusOr<mpz_class> DecodeNat(ByteView b);
Bytes EncodeInt(const mpz_class& v);
absl::StatusOr<mpz_class> DecodeInt(ByteView b);

}  // namespace pihvc

#endif  // PIHVC_UTIL_ENCODING_H_
