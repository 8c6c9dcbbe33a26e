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

#ifndef RMAX_SIMNET_CAPABILITY_HPP
#define RMAX_SIMNET_CAPABILITY_HPP

#include <cstddef>
#include <map>
#include <utility>

#include "rmax/core/ops_string.hpp"
#include "rmax/core/types.hpp"

namespace rmax::simnet {

/// One atomic operation the NIC may implement intrinsically. `cas` is kept
/// apart from the reduce ops because it is not an MPI_Op.
struct AtomicOpKey {
  bool is_cas = false;
  ReduceOp op = ReduceOp::sum;  // ignored when is_cas

  auto operator<=>(const AtomicOpKey&) const = default;
};

/// Map from (operation, datatype) to the maximum element count the NIC can
/// execute intrinsically. Absent or zero means unsupported.
class CapabilityTable {
 public:
  /// Integral single-element atomics only: {sum, band, bor, bxor, min, max,
  /// replace, no_op, cas} x {int32, int64} with max count 1. Multiplication
  /// and all floating-point operations are left to software.
  static CapabilityTable nic_default();

  void set(AtomicOpKey op, Datatype dtype, size_t max_count);
  size_t max_count(AtomicOpKey op, Datatype dtype) const;

  /// True iff 0 < count <= max_count(op, dtype).
  bool query(AtomicOpKey op, Datatype dtype, size_t count) const;

  /// True iff every member of the parsed set is supported at `count`.
  bool query_all(const OpSet& ops, Datatype dtype, size_t count) const;

 private:
  std::map<std::pair<AtomicOpKey, Datatype>, size_t> limits_;
};

}  // namespace rmax::simnet

#endif  // RMAX_SIMNET_CAPABILITY_HPP
