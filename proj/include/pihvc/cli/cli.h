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


#ifndef PIHVC_CLI_CLI_H_
#define PIHVC_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace pihvc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // also operational errors
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitCorrupt = 3;

// Runs one command. `args` excludes the program name. The ledger file and
// its companion files are replaced by rename, so a failed command leaves
// them as they were.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pihvc::cli

#endif  // PIHVC_CLI_CLI_H_
