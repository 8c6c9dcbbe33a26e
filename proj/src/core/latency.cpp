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

#include "rmax/core/latency.hpp"

#include <fstream>
#include <sstream>

#include "rmax/core/error.hpp"

namespace rmax {
namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_positive(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    raise(Errc::invalid_value, "bad numeric value for " + key + ": \"" + value + "\"");
  }
}

}  // namespace

void LatencyParams::validate() const {
  auto check = [](const char* name, double v) {
    if (!(v > 0.0)) raise(Errc::invalid_value, std::string(name) + " must be > 0");
  };
  check("t_inject", t_inject);
  check("t_rtt", t_rtt);
  check("bandwidth", bandwidth);
  check("t_atomic_nic", t_atomic_nic);
  check("t_am_handler", t_am_handler);
  check("t_rkey_fetch", t_rkey_fetch);
  check("t_win_create", t_win_create);
}

void LatencyParams::apply(const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "t_inject") t_inject = parse_positive(k, v);
    else if (k == "t_rtt") t_rtt = parse_positive(k, v);
    else if (k == "bandwidth") bandwidth = parse_positive(k, v);
    else if (k == "t_atomic_nic") t_atomic_nic = parse_positive(k, v);
    else if (k == "t_am_handler") t_am_handler = parse_positive(k, v);
    else if (k == "t_rkey_fetch") t_rkey_fetch = parse_positive(k, v);
    else if (k == "t_win_create") t_win_create = parse_positive(k, v);
  }
  validate();
}

LatencyParams LatencyParams::from_file(const std::string& path) {
  LatencyParams p;
  p.apply(read_kv_file(path));
  return p;
}

std::map<std::string, std::string> read_kv_stream(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) raise(Errc::invalid_value, "expected key=value, got \"" + t + "\"");
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path);
  return read_kv_stream(in);
}

}  // namespace rmax
