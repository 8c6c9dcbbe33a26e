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

#include "rmax/simnet/trace.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "rmax/core/error.hpp"

namespace rmax::simnet {

const char* op_kind_name(OpKind k) {
  switch (k) {
    case OpKind::rdma_put: return "rdma_put";
    case OpKind::rdma_get: return "rdma_get";
    case OpKind::nic_atomic: return "nic_atomic";
    case OpKind::am_put: return "am_put";
    case OpKind::am_get: return "am_get";
    case OpKind::am_accumulate: return "am_accumulate";
    case OpKind::rkey_fetch: return "rkey_fetch";
    case OpKind::none: return "none";
  }
  return "unknown";
}

const char* trace_kind_name(TraceKind k) {
  switch (k) {
    case TraceKind::submit: return "submit";
    case TraceKind::local_complete: return "local_complete";
    case TraceKind::remote_complete: return "remote_complete";
    case TraceKind::fault: return "fault";
    case TraceKind::fence: return "fence";
    case TraceKind::rkey_fetch: return "rkey_fetch";
    case TraceKind::am_enqueue: return "am_enqueue";
    case TraceKind::win_create: return "win_create";
    case TraceKind::flush: return "flush";
  }
  return "unknown";
}

void TraceLog::dump_csv(std::ostream& out) const {
  out << "time_us,event_kind,rank,context,endpoint,op_kind,bytes\n";
  char buf[64];
  for (const TraceEvent& ev : events_) {
    std::snprintf(buf, sizeof buf, "%.6f", ev.time_us);
    out << buf << ',' << trace_kind_name(ev.kind) << ',' << ev.rank << ',' << ev.context << ','
        << ev.endpoint << ',' << op_kind_name(ev.op) << ',' << ev.bytes << '\n';
  }
}

void TraceLog::dump_csv_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot open " + path + " for writing");
  dump_csv(out);
}

}  // namespace rmax::simnet
