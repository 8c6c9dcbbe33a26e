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

#include "rmax/simnet/capability.hpp"

namespace rmax::simnet {

CapabilityTable CapabilityTable::nic_default() {
  CapabilityTable t;
  const ReduceOp ops[] = {ReduceOp::sum,  ReduceOp::band, ReduceOp::bor,     ReduceOp::bxor,
                          ReduceOp::min,  ReduceOp::max,  ReduceOp::replace, ReduceOp::no_op};
  const Datatype dts[] = {Datatype::int32, Datatype::int64};
  for (Datatype dt : dts) {
    for (ReduceOp op : ops) t.set({false, op}, dt, 1);
    t.set({true, ReduceOp::sum}, dt, 1);  // cas
  }
  return t;
}

void CapabilityTable::set(AtomicOpKey op, Datatype dtype, size_t max_count) {
  if (op.is_cas) op.op = ReduceOp::sum;  // normalize; the op field is ignored for cas
  if (max_count == 0)
    limits_.erase({op, dtype});
  else
    limits_[{op, dtype}] = max_count;
}

size_t CapabilityTable::max_count(AtomicOpKey op, Datatype dtype) const {
  if (op.is_cas) op.op = ReduceOp::sum;
  auto it = limits_.find({op, dtype});
  return it == limits_.end() ? 0 : it->second;
}

bool CapabilityTable::query(AtomicOpKey op, Datatype dtype, size_t count) const {
  return count > 0 && max_count(op, dtype) >= count;
}

bool CapabilityTable::query_all(const OpSet& ops, Datatype dtype, size_t count) const {
  if (ops.cas && !query({true, ReduceOp::sum}, dtype, count)) return false;
  for (ReduceOp op : ops.reduce)
    if (!query({false, op}, dtype, count)) return false;
  return true;
}

}  // namespace rmax::simnet
