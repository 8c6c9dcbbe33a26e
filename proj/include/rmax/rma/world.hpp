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

#ifndef RMAX_RMA_WORLD_HPP
#define RMAX_RMA_WORLD_HPP

#include <cstring>
#include <memory>
#include <span>
#include <vector>

#include "rmax/rma/window.hpp"
#include "rmax/simnet/loopback.hpp"
#include "rmax/simnet/sim_nic.hpp"

namespace rmax::rma {

enum class TransportKind { sim, loopback };

struct WorldConfig {
  int nranks = 2;
  uint64_t arena_size = 1 << 20;
  TransportKind transport = TransportKind::sim;
  LatencyParams latency{};
  double reorder_jitter_us = 0.5;
  uint64_t seed = 42;
  simnet::CapabilityTable capabilities = simnet::CapabilityTable::nic_default();
  bool trace_enabled = true;
  /// Checked mode turns misuse (assertion violations, stale caches, epoch
  /// errors) into deterministic errors; unchecked mode follows the hazardous
  /// paths and lets the transport fault at delivery.
  bool checked = true;
};

/// A group of simulated peers sharing one transport. Collective calls
/// (win_allocate, win_create_dynamic) are a rendezvous: one call acts for
/// every rank of the group.
class World {
 public:
  explicit World(WorldConfig cfg);
  ~World();
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  const WorldConfig& config() const { return cfg_; }
  int nranks() const { return cfg_.nranks; }
  bool checked() const { return cfg_.checked; }

  simnet::Transport& transport() { return *tx_; }
  /// Non-null only when running over the simulated NIC.
  simnet::SimNic* sim() { return sim_; }

  /// Bump-allocates space in a rank's arena for user buffers.
  uint64_t alloc(Rank rank, uint64_t size, uint64_t align = 64);

  std::byte* mem(Rank rank, uint64_t vaddr);
  const std::byte* mem_view(Rank rank, uint64_t vaddr) const;

  template <typename T>
  T read(Rank rank, uint64_t vaddr) const {
    T v;
    std::memcpy(&v, mem_view(rank, vaddr), sizeof(T));
    return v;
  }
  template <typename T>
  void write(Rank rank, uint64_t vaddr, T v) {
    std::memcpy(mem(rank, vaddr), &v, sizeof(T));
  }

  // Window lifecycle.
  WindowPtr win_allocate(uint64_t size_per_rank, int disp_unit, const InfoMap& info);
  WindowPtr win_allocate(const std::vector<uint64_t>& sizes, int disp_unit, const InfoMap& info);
  WindowPtr win_create_dynamic(const InfoMap& info);
  WindowPtr win_dup_with_info(const WindowPtr& parent, const InfoMap& info);

  /// Registers [base, base+size) of the caller's arena and returns the
  /// exchangeable handle. No target-side window state is allocated.
  MemHandleBlob memhandle_create(Rank caller, uint64_t base, uint64_t size, const InfoMap& info,
                                 const WindowPtr& parentwin);
  WindowPtr win_from_memhandle(Issuer caller, std::span<const std::byte> blob, uint64_t size,
                               int disp_unit, const InfoMap& info, Rank target,
                               const WindowPtr& parentwin);
  void memhandle_release(Rank caller, std::span<const std::byte> blob,
                         const WindowPtr& parentwin);

  void win_free(const WindowPtr& win);

  /// Exposed base vaddr of `rank`'s segment of an allocated window.
  uint64_t allocated_base(const WindowPtr& win, Rank rank) const;

 private:
  WorldConfig cfg_;
  std::unique_ptr<simnet::Transport> tx_;
  simnet::SimNic* sim_ = nullptr;
  std::vector<uint64_t> bump_;
  uint64_t next_window_id_ = 1;
};

}  // namespace rmax::rma

#endif  // RMAX_RMA_WORLD_HPP
