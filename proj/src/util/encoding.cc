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

#include "pihvc/util/encoding.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pihvc/util/bignum.h"
#include "pihvc/util/status_macros.h"

namespace pihvc {
namespace {

// Upper bound on the number of fields a reader accepts, to keep malformed
// input from driving large allocations.
constexpr uint32_t kMaxFields = 1u << 24;

void PutU32(Bytes& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

uint32_t GetU32(const uint8_t* p) {
  return (uint32_t{p[0]} << 24) | (uint32_t{p[1]} << 16) |
         (uint32_t{p[2]} << 8) | uint32_t{p[3]};
}

}  // namespace

Bytes EncodeU32(uint32_t v) {
  Bytes out;
  PutU32(out, v);
  return out;
}

Bytes EncodeNat(const mpz_class& v) { return NatToBytes(v); }

absl::StatusOr<mpz_class> DecodeNat(ByteView b) {
  if (!b.empty() && b[0] == 0) {
    return absl::InvalidArgumentError("non-minimal integer encoding");
  }
  return NatFromBytes(b);
}

Bytes EncodeInt(const mpz_class& v) {
  Bytes out;
  out.push_back(v < 0 ? 1 : 0);
  mpz_class mag = abs(v);
  Append(out, NatToBytes(mag));
  return out;
}

absl::StatusOr<mpz_class> DecodeInt(ByteView b) {
  if (b.empty() || b[0] > 1) {
    return absl::InvalidArgumentError("bad signed integer encoding");
  }
  ASSIGN_OR_RETURN(mpz_class mag, DecodeNat(b.subspan(1)));
  if (b[0] == 1) {
    if (mag == 0) return absl::InvalidArgumentError("negative zero");
    mag = -mag;
  }
  return mag;
}

FieldWriter& FieldWriter::Add(ByteView field) {
  fields_.emplace_back(field.begin(), field.end());
  return *this;
}

FieldWriter& FieldWriter::AddU32(uint32_t v) { return Add(EncodeU32(v)); }

FieldWriter& FieldWriter::AddU64(uint64_t v) {
  Bytes b;
  PutU32(b, static_cast<uint32_t>(v >> 32));
  PutU32(b, static_cast<uint32_t>(v));
  return Add(b);
}

FieldWriter& FieldWriter::AddNat(const mpz_class& v) {
  return Add(EncodeNat(v));
}

FieldWriter& FieldWriter::AddInt(const mpz_class& v) {
  return Add(EncodeInt(v));
}

FieldWriter& FieldWriter::AddList(const std::vector<Bytes>& items) {
  FieldWriter nested("");
  for (const Bytes& item : items) nested.Add(item);
  return Add(nested.Finish());
}

FieldWriter& FieldWriter::AddNatList(const std::vector<mpz_class>& items) {
  FieldWriter nested("");
  for (const mpz_class& item : items) nested.AddNat(item);
  return Add(nested.Finish());
}

FieldWriter& FieldWriter::AddIntList(const std::vector<mpz_class>& items) {
  FieldWriter nested("");
  for (const mpz_class& item : items) nested.AddInt(item);
  return Add(nested.Finish());
}

Bytes FieldWriter::Finish() const {
  Bytes out = tag_;
  PutU32(out, static_cast<uint32_t>(fields_.size()));
  for (const Bytes& f : fields_) {
    PutU32(out, static_cast<uint32_t>(f.size()));
    Append(out, f);
  }
  return out;
}

absl::StatusOr<FieldReader> FieldReader::Open(ByteView data,
                                              std::string_view tag) {
  if (data.size() < tag.size() + 4 ||
      !std::equal(tag.begin(), tag.end(), data.begin())) {
    return absl::InvalidArgumentError(
        absl::StrCat("encoding: expected tag '", std::string(tag), "'"));
  }
  size_t pos = tag.size();
  uint32_t count = GetU32(data.data() + pos);
  pos += 4;
  if (count > kMaxFields || count > (data.size() - pos) / 4) {
    return absl::InvalidArgumentError("encoding: field count out of range");
  }
  std::vector<Bytes> fields;
  fields.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    if (data.size() - pos < 4) {
      return absl::InvalidArgumentError("encoding: truncated length");
    }
    uint32_t len = GetU32(data.data() + pos);
    pos += 4;
    if (data.size() - pos < len) {
      return absl::InvalidArgumentError("encoding: truncated field");
    }
    fields.emplace_back(data.begin() + pos, data.begin() + pos + len);
    pos += len;
  }
  if (pos != data.size()) {
    return absl::InvalidArgumentError("encoding: trailing bytes");
  }
  return FieldReader(std::move(fields));
}

absl::StatusOr<Bytes> FieldReader::Next() {
  if (pos_ >= fields_.size()) {
    return absl::InvalidArgumentError("encoding: missing field");
  }
  return fields_[pos_++];
}

absl::StatusOr<std::string> FieldReader::NextString() {
  ASSIGN_OR_RETURN(Bytes b, Next());
  return ToString(b);
}

absl::StatusOr<uint32_t> FieldReader::NextU32() {
  ASSIGN_OR_RETURN(Bytes b, Next());
  if (b.size() != 4) return absl::InvalidArgumentError("encoding: bad u32");
  return GetU32(b.data());
}

absl::StatusOr<uint64_t> FieldReader::NextU64() {
  ASSIGN_OR_RETURN(Bytes b, Next());
  if (b.size() != 8) return absl::InvalidArgumentError("encoding: bad u64");
  return (uint64_t{GetU32(b.data())} << 32) | GetU32(b.data() + 4);
}

absl::StatusOr<mpz_class> FieldReader::NextNat() {
  ASSIGN_OR_RETURN(Bytes b, Next());
  return DecodeNat(b);
}

absl::StatusOr<mpz_class> FieldReader::NextInt() {
  ASSIGN_OR_RETURN(Bytes b, Next());
  return DecodeInt(b);
}

absl::StatusOr<bool> FieldReader::NextBool() {
  ASSIGN_OR_RETURN(uint32_t v, NextU32());
  if (v > 1) return absl::InvalidArgumentError("encoding: bad bool");
  return v == 1;
}

absl::StatusOr<std::vector<Bytes>> FieldReader::NextList() {
  ASSIGN_OR_RETURN(Bytes b, Next());
  ASSIGN_OR_RETURN(FieldReader nested, Open(b, ""));
  return std::move(nested.fields_);
}

absl::StatusOr<std::vector<mpz_class>> FieldReader::NextNatList() {
  ASSIGN_OR_RETURN(std::vector<Bytes> items, NextList());
  std::vector<mpz_class> out;
  out.reserve(items.size());
  for (const Bytes& item : items) {
    ASSIGN_OR_RETURN(mpz_class v, DecodeNat(item));
    out.push_back(std::move(v));
  }
  return out;
}

absl::StatusOr<std::vector<mpz_class>> FieldReader::NextIntList() {
  ASSIGN_OR_RETURN(std::vector<Bytes> items, NextList());
  std::vector<mpz_class> out;
  out.reserve(items.size());
  for (const Bytes& item : items) {
    ASSIGN_OR_RETURN(mpz_class v, DecodeInt(item));
    out.push_back(std::move(v));
  }
  return out;
}

absl::Status FieldReader::Done() const {
  if (pos_ != fields_.size()) {
    return absl::InvalidArgumentError("encoding: unconsumed fields");
  }
  return absl::OkStatus();
}

}  // namespace pihvc
