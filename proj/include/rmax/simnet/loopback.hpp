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

#ifndef RMAX_SIMNET_LOOPBACK_HPP
#define RMAX_SIMNET_LOOPBACK_HPP

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "rmax/simnet/transport.hpp"

namespace rmax::simnet {

struct LoopbackConfig {
  int nranks = 2;
  uint64_t arena_size = 1 << 20;
  CapabilityTable capabilities = CapabilityTable::nic_default();
};

/// In-process transport with real concurrency and no timing model.
/// Operations apply synchronously at submit under a per-rank lock, which
/// also serializes accumulate application (element-wise atomicity). Safe for
/// concurrent submit/flush from any number of threads; all virtual-time
/// queries report zero. Progress toggling has no effect: there is no
/// AM emulation to gate.
class LoopbackTransport final : public Transport {
 public:
  explicit LoopbackTransport(LoopbackConfig cfg);
  ~LoopbackTransport() override;

  bool simulated() const override { return false; }
  int nranks() const override { return cfg_.nranks; }

  uint64_t arena_size(Rank r) const override;
  std::byte* arena(Rank r) override;
  const std::byte* arena_view(Rank r) const override;
  uint64_t arena_bytes_written(Rank r) const override;

  RegistrationRecord register_memory(Rank r, uint64_t base, uint64_t size,
                                     uint64_t parent_window_id) override;
  void deregister_memory(const RegistrationRecord& rec) override;
  bool registration_live(Rank owner, uint64_t rkey) const override;

  Endpoint& endpoint(Issuer issuer, Rank peer, uint64_t stream) override;
  TicketPtr submit(Endpoint& ep, TransportOp op) override;
  void fence(Endpoint&) override {}
  void flush_endpoint(Issuer caller, Endpoint& ep, bool local_only) override;
  void wait_tickets(Issuer, std::span<const TicketPtr>, bool) override {}
  bool pump_one() override { return false; }

  const CapabilityTable& capabilities() const override { return cfg_.capabilities; }
  bool nic_atomics_available() const override { return true; }
  void set_progress(Rank, bool) override {}

  const LatencyParams& params() const override { return params_; }
  double context_clock(Issuer) const override { return 0; }
  void charge(Issuer, double, TraceKind, OpKind, Rank, uint64_t) override {}
  void advance_clock(Issuer, double) override {}

  TraceLog& trace() override { return trace_; }

 private:
  struct Registration {
    uint64_t base = 0;
    uint64_t size = 0;
    bool live = false;
  };
  struct RankState {
    std::vector<std::byte> arena;
    std::map<uint64_t, Registration> registrations;
    std::atomic<uint64_t> bytes_written{0};
    mutable std::mutex mu;
  };

  void check_rank(Rank r) const;

  LoopbackConfig cfg_;
  LatencyParams params_{};
  std::vector<std::unique_ptr<RankState>> ranks_;
  std::map<std::tuple<Rank, int32_t, Rank, uint64_t>, std::unique_ptr<Endpoint>> endpoints_;
  mutable std::mutex endpoints_mu_;
  std::atomic<uint64_t> next_rkey_{1};
  std::atomic<uint64_t> next_endpoint_id_{1};
  TraceLog trace_;  // disabled by default: interleaving is not deterministic
};

}  // namespace rmax::simnet

#endif  // RMAX_SIMNET_LOOPBACK_HPP
