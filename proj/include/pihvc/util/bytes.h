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

#ifndef PIHVC_UTIL_BYTES_H_
#define PIHVC_UTIL_BYTES_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace pihvc {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

inline ByteView AsBytes(std::string_view s) {
  return ByteView(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

inline Bytes ToBytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

inline std::string ToString(ByteView b) {
  return std::string(b.begin(), b.end());
}

inline void Append(Bytes& out, ByteView more) {
  out.insert(out.end(), more.begin(), more.end());
}

// Lowercase hex, two characters per byte.
std::string HexEncode(ByteView bytes);
absl::StatusOr<Bytes> HexDecode(std::string_view hex);

// True if `needle` occurs as a contiguous run inside `haystack`. An empty
// needle never matches.
bool ContainsSubsequence(ByteView haystack, ByteView needle);

}  // namespace pihvc

#endif  // PIHVC_UTIL_BYTES_H_
