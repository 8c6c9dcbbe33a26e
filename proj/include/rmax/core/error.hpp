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

#ifndef RMAX_CORE_ERROR_HPP
#define RMAX_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rmax {

enum class Errc {
  ok = 0,
  // encoding
  bad_magic,
  bad_version,
  truncated,
  invalid_ops_string,
  invalid_value,
  // registration / transport
  out_of_arena,
  zero_size,
  stale_rkey,
  already_released,
  closed_endpoint,
  payload_too_large,
  unattached,
  // window / epoch
  overlap,
  unknown_base,
  no_epoch,
  double_lock,
  unlock_without_lock,
  lock_conflict,
  would_deadlock,
  out_of_range,
  invalid_target,
  unsupported_operation,
  assertion_violation,
  invalid_handle,
  open_epoch,
  outstanding_request,
  target_unresolved,
  not_owner,
  // harness / cli
  oracle_mismatch,
  invalid_scenario,
  io_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace rmax

#endif  // RMAX_CORE_ERROR_HPP
