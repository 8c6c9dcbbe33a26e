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

#include "rmax/core/types.hpp"

namespace rmax {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ok: return "ok";
    case Errc::bad_magic: return "bad-magic";
    case Errc::bad_version: return "bad-version";
    case Errc::truncated: return "truncated";
    case Errc::invalid_ops_string: return "invalid-ops-string";
    case Errc::invalid_value: return "invalid-value";
    case Errc::out_of_arena: return "out-of-arena";
    case Errc::zero_size: return "zero-size";
    case Errc::stale_rkey: return "stale-rkey";
    case Errc::already_released: return "already-released";
    case Errc::closed_endpoint: return "closed-endpoint";
    case Errc::payload_too_large: return "payload-too-large";
    case Errc::unattached: return "unattached";
    case Errc::overlap: return "overlap";
    case Errc::unknown_base: return "unknown-base";
    case Errc::no_epoch: return "no-epoch";
    case Errc::double_lock: return "double-lock";
    case Errc::unlock_without_lock: return "unlock-without-lock";
    case Errc::lock_conflict: return "lock-conflict";
    case Errc::would_deadlock: return "would-deadlock";
    case Errc::out_of_range: return "out-of-range";
    case Errc::invalid_target: return "invalid-target";
    case Errc::unsupported_operation: return "unsupported-operation";
    case Errc::assertion_violation: return "assertion-violation";
    case Errc::invalid_handle: return "invalid-handle";
    case Errc::open_epoch: return "open-epoch";
    case Errc::outstanding_request: return "outstanding-request";
    case Errc::target_unresolved: return "target-unresolved";
    case Errc::not_owner: return "not-owner";
    case Errc::oracle_mismatch: return "oracle-mismatch";
    case Errc::invalid_scenario: return "invalid-scenario";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

const char* datatype_name(Datatype t) {
  switch (t) {
    case Datatype::byte: return "byte";
    case Datatype::int32: return "int32";
    case Datatype::int64: return "int64";
    case Datatype::float32: return "float32";
    case Datatype::float64: return "float64";
  }
  return "unknown";
}

const char* reduce_op_name(ReduceOp op) {
  switch (op) {
    case ReduceOp::sum: return "sum";
    case ReduceOp::prod: return "prod";
    case ReduceOp::min: return "min";
    case ReduceOp::max: return "max";
    case ReduceOp::band: return "band";
    case ReduceOp::bor: return "bor";
    case ReduceOp::bxor: return "bxor";
    case ReduceOp::replace: return "replace";
    case ReduceOp::no_op: return "no_op";
  }
  return "unknown";
}

}  // namespace rmax
