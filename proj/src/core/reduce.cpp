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

#include "rmax/core/reduce.hpp"

#include <algorithm>
#include <cstring>

#include "rmax/core/error.hpp"

namespace rmax {
namespace {

template <typename T>
T load(const std::byte* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

template <typename T>
void store(std::byte* p, T v) {
  std::memcpy(p, &v, sizeof(T));
}

template <typename T>
T combine(ReduceOp op, T a, T b) {
  switch (op) {
    case ReduceOp::sum: return T(a + b);
    case ReduceOp::prod: return T(a * b);
    case ReduceOp::min: return std::min(a, b);
    case ReduceOp::max: return std::max(a, b);
    case ReduceOp::replace: return b;
    case ReduceOp::no_op: return a;
    default: break;
  }
  if constexpr (std::is_integral_v<T>) {
    switch (op) {
      case ReduceOp::band: return T(a & b);
      case ReduceOp::bor: return T(a | b);
      case ReduceOp::bxor: return T(a ^ b);
      default: break;
    }
  }
  raise(Errc::invalid_value, "reduce op not defined for this datatype");
}

template <typename T>
size_t apply_typed(ReduceOp op, size_t count, std::byte* target, const std::byte* operand) {
  if (op == ReduceOp::no_op) return 0;
  for (size_t i = 0; i < count; ++i) {
    T t = load<T>(target + i * sizeof(T));
    T o = load<T>(operand + i * sizeof(T));
    store<T>(target + i * sizeof(T), combine<T>(op, t, o));
  }
  return count * sizeof(T);
}

}  // namespace

size_t apply_reduce(ReduceOp op, Datatype dtype, size_t count, std::byte* target,
                    const std::byte* operand) {
  switch (dtype) {
    case Datatype::byte: return apply_typed<uint8_t>(op, count, target, operand);
    case Datatype::int32: return apply_typed<int32_t>(op, count, target, operand);
    case Datatype::int64: return apply_typed<int64_t>(op, count, target, operand);
    case Datatype::float32: return apply_typed<float>(op, count, target, operand);
    case Datatype::float64: return apply_typed<double>(op, count, target, operand);
  }
  return 0;
}

bool apply_compare_swap(Datatype dtype, std::byte* target, const std::byte* compare,
                        const std::byte* desired) {
  size_t n = datatype_size(dtype);
  if (std::memcmp(target, compare, n) != 0) return false;
  std::memcpy(target, desired, n);
  return true;
}

}  // namespace rmax
