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

#ifndef PIHVC_CLI_BENCH_H_
#define PIHVC_CLI_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pihvc/protocol/types.h"
#include "pihvc/util/random.h"

namespace pihvc {

// One (parameter value, phase) measurement. The operation counts stand in
// for circuit constraint counts.
struct BenchRow {
  std::string parameter;  // "NI", "UIS" or "IV"
  int64_t value = 0;
  std::string phase;
  double mean_seconds = 0;
  uint64_t modexp_count = 0;  // per run
  uint64_t hash_count = 0;    // per run
};

struct BenchOptions {
  std::vector<int> ni = {4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048};
  std::vector<int> uis = {5, 10, 15, 20, 25, 30};
  std::vector<int> iv = {4, 8, 16, 32, 64};
  // Each phase runs at least `min_reps` times and until `min_seconds` of
  // measured time has accumulated.
  int min_reps = 10;
  double min_seconds = 0.05;
  int uis_base_set = 64;
  int iv_tree_height = 28;
};

// NI phases: acc_gen, qua_prove, qua_verify. UIS phases: swap_prove,
// swap_verify. IV phases: registry_insert, registry_verify.
absl::StatusOr<std::vector<BenchRow>> RunBench(const PublicParams& pp,
                                               const BenchOptions& options,
                                               RandomSource& rng);

inline constexpr char kBenchCsvHeader[] =
    "parameter,value,phase,mean_seconds,modexp_count,hash_count";

// Header line plus one line per row.
std::string BenchCsv(const std::vector<BenchRow>& rows);

}  // namespace pihvc

#endif  // PIHVC_CLI_BENCH_H_
