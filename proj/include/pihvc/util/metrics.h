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

#ifndef PIHVC_UTIL_METRICS_H_
#define PIHVC_UTIL_METRICS_H_

#include <cstdint>

namespace pihvc {

// Per-thread operation counters. These stand in for circuit constraint counts
// in benchmark output.
struct OpCounters {
  uint64_t modexp = 0;
  uint64_t hash = 0;

  OpCounters operator-(const OpCounters& other) const {
    return {modexp - other.modexp, hash - other.hash};
  }
};

OpCounters& ThreadCounters();

// Captures the counter delta over its lifetime.
class CounterScope {
 public:
  CounterScope() : start_(ThreadCounters()) {}
  OpCounters Delta() const { return ThreadCounters() - start_; }

 private:
  OpCounters start_;
};

}  // namespace pihvc

#endif  // PIHVC_UTIL_METRICS_H_
