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

#ifndef RMAX_CORE_OPS_STRING_HPP
#define RMAX_CORE_OPS_STRING_HPP

#include <set>
#include <string_view>

#include "rmax/core/types.hpp"

namespace rmax {

/// Result of parsing an operation-list string such as "sum,cas,replace".
struct OpSet {
  std::set<ReduceOp> reduce;
  bool cas = false;

  bool operator==(const OpSet&) const = default;
  bool empty() const { return reduce.empty() && !cas; }
};

/// Parses a comma-delimited, whitespace-tolerant, case-insensitive list of
/// operation names: the second half of the predefined reduce-op names
/// ("sum", "prod", "min", "max", "band", "bor", "bxor", "no_op"), "replace",
/// and "cas" for compare-and-swap. Unknown tokens raise
/// Errc::invalid_ops_string naming the offending token.
OpSet parse_ops_string(std::string_view ops);

}  // namespace rmax

#endif  // RMAX_CORE_OPS_STRING_HPP
