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

#ifndef RMAX_CORE_REDUCE_HPP
#define RMAX_CORE_REDUCE_HPP

#include <cstddef>

#include "rmax/core/types.hpp"

namespace rmax {

/// Applies `target[i] = op(target[i], operand[i])` element-wise over `count`
/// elements of `dtype`, in host byte order. `no_op` leaves the target
/// untouched; `replace` stores the operand. Returns the number of bytes
/// actually written to `target`.
size_t apply_reduce(ReduceOp op, Datatype dtype, size_t count, std::byte* target,
                    const std::byte* operand);

/// Compare-and-swap on one element: if `*target == *compare` then
/// `*target = *desired`. Returns true when the swap happened. The previous
/// target value is available to callers that copied it out beforehand.
bool apply_compare_swap(Datatype dtype, std::byte* target, const std::byte* compare,
                        const std::byte* desired);

}  // namespace rmax

#endif  // RMAX_CORE_REDUCE_HPP
