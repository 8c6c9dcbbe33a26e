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

#ifndef RMAX_SRC_RMA_FAMILY_HPP
#define RMAX_SRC_RMA_FAMILY_HPP

#include <condition_variable>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "rmax/rma/window.hpp"

namespace rmax::rma {

/// State shared by a parent window, its duplicates, and the memory-handle
/// windows connected to it: registrations, origin-side rkey caches, the
/// epoch state, and completion bookkeeping. Guarded by `mu` so the loopback
/// transport can be driven from real threads.
struct FamilyState {
  simnet::Transport* tx = nullptr;
  bool checked = true;
  uint64_t family_id = 0;  // parent window id; also the transport stream
  int nranks = 0;

  WindowKind base_kind = WindowKind::allocated;

  // Allocated windows.
  int disp_unit = 1;
  std::vector<uint64_t> bases;
  std::vector<uint64_t> sizes;
  std::vector<std::optional<RegistrationRecord>> allocated_regs;

  // Dynamic windows: per-rank attach table by base vaddr.
  std::vector<std::map<uint64_t, RegistrationRecord>> attached;

  // Origin-side registration cache: (origin, target, region base) -> record.
  std::map<std::tuple<Rank, Rank, uint64_t>, RegistrationRecord> rkey_cache;

  // Epoch state, per target.
  struct TargetLockState {
    int shared_held = 0;
    bool exclusive_held = false;
    Rank exclusive_owner = -1;
    double free_of_exclusive_at = 0;  // virtual release times, SimNIC only
    double free_of_all_at = 0;
  };
  std::vector<TargetLockState> lock_state;
  // (origin, target) -> (mode, window id the lock was taken through).
  std::map<std::pair<Rank, Rank>, std::pair<LockMode, uint64_t>> held;
  // origin -> window id, for lock_all epochs.
  std::map<Rank, uint64_t> lock_all_via;

  // Completion bookkeeping: (origin rank, context, target) -> in-flight ops.
  std::map<std::tuple<Rank, int32_t, Rank>, std::vector<simnet::TicketPtr>> outstanding;
  // Endpoints this family has used, for scope-aware flush walks.
  std::set<std::tuple<Rank, int32_t, Rank>> endpoints_used;
  // Pinned funnel context per (origin, target) for ordered process scope.
  std::map<std::pair<Rank, Rank>, int32_t> funnel_ctx;

  // Unsettled request-mode tickets per window id (win_free precondition).
  std::map<uint64_t, std::vector<simnet::TicketPtr>> request_tickets;

  int live_windows = 0;

  std::mutex mu;
  std::condition_variable cv;

  bool has_epoch(Rank origin, Rank target) const {
    return lock_all_via.contains(origin) || held.contains({origin, target});
  }
};

}  // namespace rmax::rma

#endif  // RMAX_SRC_RMA_FAMILY_HPP
