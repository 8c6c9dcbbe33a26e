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

#ifndef RMAX_CORE_LATENCY_HPP
#define RMAX_CORE_LATENCY_HPP

#include <iosfwd>
#include <map>
#include <string>

namespace rmax {

/// Timing model of the simulated NIC. All times in microseconds of virtual
/// time, bandwidth in bytes per microsecond. Values are calibration knobs,
/// not measurements of any particular fabric.
struct LatencyParams {
  double t_inject = 0.2;        // CPU cost to hand one op to the NIC
  double t_rtt = 2.0;           // network round trip
  double bandwidth = 25000.0;   // payload bytes per microsecond
  double t_atomic_nic = 0.3;    // extra cost of a NIC-intrinsic atomic
  double t_am_handler = 2.0;    // target CPU time per active message drained
  double t_rkey_fetch = 2.0;    // fetch/verify registration info round trip
  double t_win_create = 1.0;    // fixed cost to build a memhandle window

  /// Throws Errc::invalid_value unless every field is strictly positive.
  void validate() const;

  /// Applies recognized "key=value" entries (unknown keys ignored).
  void apply(const std::map<std::string, std::string>& kv);

  static LatencyParams from_file(const std::string& path);
};

/// Reads a flat key=value text file. '#' starts a comment, blank lines are
/// skipped, whitespace around keys and values is trimmed.
std::map<std::string, std::string> read_kv_file(const std::string& path);
std::map<std::string, std::string> read_kv_stream(std::istream& in);

}  // namespace rmax

#endif  // RMAX_CORE_LATENCY_HPP
