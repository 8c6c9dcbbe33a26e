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

#ifndef RMAX_SIMNET_TRACE_HPP
#define RMAX_SIMNET_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rmax/core/types.hpp"

namespace rmax::simnet {

enum class OpKind : uint8_t {
  rdma_put,
  rdma_get,
  nic_atomic,
  am_put,
  am_get,
  am_accumulate,
  rkey_fetch,
  none,
};

const char* op_kind_name(OpKind k);

enum class TraceKind : uint8_t {
  submit,
  local_complete,
  remote_complete,
  fault,
  fence,
  rkey_fetch,
  am_enqueue,
  win_create,
  flush,
};

const char* trace_kind_name(TraceKind k);

/// One line of the simulator's completion trace.
struct TraceEvent {
  double time_us = 0;
  TraceKind kind = TraceKind::submit;
  Rank rank = 0;       // issuing rank (target rank for am_enqueue)
  int32_t context = 0;
  uint64_t endpoint = 0;
  OpKind op = OpKind::none;
  uint64_t bytes = 0;
};

/// Appends events in simulation order; cleared between measurement phases.
class TraceLog {
 public:
  void record(const TraceEvent& ev) {
    if (enabled_) events_.push_back(ev);
  }
  void clear() { events_.clear(); }
  void set_enabled(bool on) { enabled_ = on; }
  bool enabled() const { return enabled_; }
  const std::vector<TraceEvent>& events() const { return events_; }

  /// CSV with header time_us,event_kind,rank,context,endpoint,op_kind,bytes.
  void dump_csv(std::ostream& out) const;
  void dump_csv_file(const std::string& path) const;

 private:
  bool enabled_ = true;
  std::vector<TraceEvent> events_;
};

}  // namespace rmax::simnet

#endif  // RMAX_SIMNET_TRACE_HPP
