// Copyright 2026 The rmax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RMAX_BENCH_SCENARIO_HPP
#define RMAX_BENCH_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rmax/core/info.hpp"
#include "rmax/core/latency.hpp"

namespace rmax::bench {

/// Declarative description of one benchmark run; loadable from a flat
/// key=value file (keys match the field names, sizes comma-separated).
struct Scenario {
  std::string name = "bench_put";
  std::string kind = "allocated";
  std::vector<uint64_t> sizes = {8};
  int iterations = 10000;
  int warmup = 100;
  int contexts = 1;
  WinScope scope = WinScope::process;
  bool ordered = false;
  DynamicMode dynamic_mode = DynamicMode::rkey_fetch;
  uint64_t seed = 42;

  void validate() const;
  static Scenario from_file(const std::string& path);
};

struct Measurement {
  std::string scenario;
  std::string kind;
  uint64_t size_bytes = 0;
  int contexts = 1;
  WinScope scope = WinScope::process;
  bool ordered = false;
  double mean_us = 0;
  double p50_us = 0;
  double p99_us = 0;
  double events_per_op = 0;
};

/// Nearest-rank percentile of an unsorted sample set, p in (0, 1].
double percentile(std::vector<double> samples, double p);

}  // namespace rmax::bench

#endif  // RMAX_BENCH_SCENARIO_HPP
