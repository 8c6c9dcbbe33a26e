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

#ifndef RMAX_CORE_TYPES_HPP
#define RMAX_CORE_TYPES_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

#include "rmax/core/error.hpp"

namespace rmax {

/// Index of a process in the simulated group. Valid ranks are dense [0, nranks).
using Rank = int32_t;

/// Fixed-size primitive element types carried by RMA operations.
enum class Datatype : uint8_t { byte, int32, int64, float32, float64 };

constexpr size_t datatype_size(Datatype t) {
  switch (t) {
    case Datatype::byte: return 1;
    case Datatype::int32: return 4;
    case Datatype::int64: return 8;
    case Datatype::float32: return 4;
    case Datatype::float64: return 8;
  }
  return 0;
}

constexpr bool datatype_integral(Datatype t) {
  return t == Datatype::byte || t == Datatype::int32 || t == Datatype::int64;
}

const char* datatype_name(Datatype t);

/// Predefined reduction operators for the accumulate family.
enum class ReduceOp : uint8_t { sum, prod, min, max, band, bor, bxor, replace, no_op };

const char* reduce_op_name(ReduceOp op);

/// Bitwise operators are only defined on integral element types.
constexpr bool reduce_valid_for(ReduceOp op, Datatype t) {
  if (op == ReduceOp::band || op == ReduceOp::bor || op == ReduceOp::bxor)
    return datatype_integral(t);
  return true;
}

/// Location in a peer's simulated address space.
struct Address {
  Rank rank = 0;
  uint64_t vaddr = 0;
};

/// The lifetime-bearing token for one registration event. Re-registering the
/// same base yields a different rkey, which is exactly what makes stale
/// origin-side caches detectable.
struct RegistrationRecord {
  Rank owner = 0;
  uint64_t base = 0;
  uint64_t size = 0;
  uint64_t rkey = 0;
  uint64_t parent_window_id = 0;

  bool operator==(const RegistrationRecord&) const = default;
};

/// Identity of an issuing thread/actor within a rank. Each issuer owns its
/// own set of transport endpoints, created lazily on first use.
struct Issuer {
  Rank rank = 0;
  int32_t context = 0;

  auto operator<=>(const Issuer&) const = default;
};

}  // namespace rmax

#endif  // RMAX_CORE_TYPES_HPP
