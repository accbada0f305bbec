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

#ifndef PIHVC_UTIL_STRINGS_H_
#define PIHVC_UTIL_STRINGS_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/strings/str_split.h"

namespace pihvc {

// Splits on `sep`, dropping empty pieces. The installed absl uses its own
// string_view type, so this converts at the boundary.
inline std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  for (absl::string_view piece :
       absl::StrSplit(absl::string_view(text.data(), text.size()), sep,
                      absl::SkipEmpty())) {
    out.emplace_back(piece.data(), piece.size());
  }
  return out;
}

}  // namespace pihvc

#endif  // PIHVC_UTIL_STRINGS_H_
