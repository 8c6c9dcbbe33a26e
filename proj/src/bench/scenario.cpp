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

#include "rmax/bench/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "rmax/core/error.hpp"

namespace rmax::bench {
namespace {

std::vector<uint64_t> parse_sizes(const std::string& s) {
  std::vector<uint64_t> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string tok = comma == std::string::npos ? s.substr(pos) : s.substr(pos, comma - pos);
    if (!tok.empty()) {
      uint64_t mult = 1;
      char suffix = tok.back();
      if (suffix == 'k' || suffix == 'K') mult = 1024;
      if (suffix == 'm' || suffix == 'M') mult = 1024 * 1024;
      if (mult != 1) tok.pop_back();
      try {
        out.push_back(std::stoull(tok) * mult);
      } catch (const std::exception&) {
        raise(Errc::invalid_scenario, "bad size token \"" + tok + "\"");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

void Scenario::validate() const {
  if (iterations <= 0) raise(Errc::invalid_scenario, "iterations must be positive");
  if (warmup < 0) raise(Errc::invalid_scenario, "warmup cannot be negative");
  if (sizes.empty()) raise(Errc::invalid_scenario, "at least one message size required");
  if (contexts < 1) raise(Errc::invalid_scenario, "at least one context required");
}

Scenario Scenario::from_file(const std::string& path) {
  Scenario s;
  for (const auto& [k, v] : read_kv_file(path)) {
    if (k == "name") s.name = v;
    else if (k == "kind") s.kind = v;
    else if (k == "sizes") s.sizes = parse_sizes(v);
    else if (k == "iterations") s.iterations = std::stoi(v);
    else if (k == "warmup") s.warmup = std::stoi(v);
    else if (k == "contexts") s.contexts = std::stoi(v);
    else if (k == "scope") s.scope = v == "thread" ? WinScope::thread : WinScope::process;
    else if (k == "ordered") s.ordered = v == "true";
    else if (k == "dynamic_mode")
      s.dynamic_mode = v == "am" ? DynamicMode::am : DynamicMode::rkey_fetch;
    else if (k == "seed") s.seed = std::stoull(v);
    else raise(Errc::invalid_scenario, "unknown scenario key \"" + k + "\"");
  }
  s.validate();
  return s;
}

double percentile(std::vector<double> samples, double p) {
  if (samples.empty()) return 0;
  std::sort(samples.begin(), samples.end());
  size_t idx = size_t(std::ceil(p * double(samples.size())));
  idx = std::min(std::max<size_t>(idx, 1), samples.size());
  return samples[idx - 1];
}

}  // namespace rmax::bench
