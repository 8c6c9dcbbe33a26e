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

#ifndef RMAX_SIMNET_SIM_NIC_HPP
#define RMAX_SIMNET_SIM_NIC_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <vector>

#include "rmax/simnet/transport.hpp"

namespace rmax::simnet {

struct SimConfig {
  int nranks = 2;
  uint64_t arena_size = 1 << 20;
  LatencyParams latency{};
  /// Upper bound of the seeded per-op transit jitter that models NIC-level
  /// reordering of unfenced rdma_put/rdma_get operations. Atomics and active
  /// messages never jitter, so accumulate ordering and AM FIFO order hold.
  double reorder_jitter_us = 0.5;
  uint64_t seed = 42;
  CapabilityTable capabilities = CapabilityTable::nic_default();
  bool trace_enabled = true;
};

/// Deterministic discrete-event RDMA NIC model with virtual time.
///
/// Externally synchronized: exactly one driver thread advances the event
/// loop. Issuer contexts are modeled, each with its own virtual clock;
/// blocking calls (flushes, waits) pump the event queue and move the calling
/// context's clock to the completion point. Identical (seed, submission
/// trace) produces an identical completion trace and identical arenas.
class SimNic final : public Transport {
 public:
  explicit SimNic(SimConfig cfg);
  ~SimNic() override;

  const SimConfig& config() const { return cfg_; }

  bool simulated() const override { return true; }
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
  void fence(Endpoint& ep) override;
  void flush_endpoint(Issuer caller, Endpoint& ep, bool local_only) override;
  void wait_tickets(Issuer caller, std::span<const TicketPtr> tickets,
                    bool local_only) override;
  bool pump_one() override;

  const CapabilityTable& capabilities() const override { return cfg_.capabilities; }
  bool nic_atomics_available() const override { return true; }

  /// Immediate toggle. While false the rank's AM inbox only grows; enabling
  /// drains it in FIFO order, one t_am_handler per message.
  void set_progress(Rank r, bool progressing) override;
  /// Scheduled toggle at an absolute virtual time.
  void set_progress_at(Rank r, double time_us, bool progressing);

  const LatencyParams& params() const override { return cfg_.latency; }
  double context_clock(Issuer issuer) const override;
  void charge(Issuer issuer, double cost_us, TraceKind kind, OpKind op, Rank peer,
              uint64_t bytes) override;
  void advance_clock(Issuer issuer, double to_time) override;

  TraceLog& trace() override { return trace_; }

  double now() const { return now_; }

  /// Runs the event loop until nothing is pending. Used by drain-style tests.
  void run_all();

  size_t am_inbox_depth(Rank r) const;

 private:
  struct SimEndpoint;
  struct Registration {
    uint64_t base = 0;
    uint64_t size = 0;
    uint64_t parent_window_id = 0;
    bool live = false;
  };
  struct AmEntry {
    TicketPtr ticket;
    TransportOp op;
  };
  struct RankState {
    std::vector<std::byte> arena;
    std::map<uint64_t, Registration> registrations;  // by rkey, tombstones kept
    uint64_t bytes_written = 0;
    bool progressing = true;
    std::deque<AmEntry> inbox;
    double cpu_free_at = 0;
    bool drain_scheduled = false;
  };
  struct Event {
    double time;
    uint64_t seq;
    std::function<void()> fn;
  };
  struct EventOrder {
    bool operator()(const Event& a, const Event& b) const {
      return a.time > b.time || (a.time == b.time && a.seq > b.seq);
    }
  };

  void check_rank(Rank r) const;
  double& clock(Issuer issuer);
  void schedule(double time, std::function<void()> fn);
  void run_until(const std::function<bool()>& pred);
  double jitter();

  // Delivery-side machinery.
  const Registration* lookup_rdma(const TransportOp& op, uint64_t len) const;
  bool resolve_am_region(const TransportOp& op, uint64_t len);
  void apply_payload(const TransportOp& op, Ticket& t, RankState& target);
  void deliver_rdma(const TicketPtr& t, TransportOp op, double time);
  void arrive_am(const TicketPtr& t, TransportOp op);
  void maybe_schedule_drain(Rank r);
  void complete_remote(const TicketPtr& t, const TransportOp& op, double time);
  void fault_op(const TicketPtr& t, Errc code, Rank owner, uint64_t rkey, double time);

  SimConfig cfg_;
  std::vector<RankState> ranks_;
  std::map<Issuer, double> clocks_;
  std::map<std::tuple<Rank, int32_t, Rank, uint64_t>, std::unique_ptr<SimEndpoint>> endpoints_;
  std::priority_queue<Event, std::vector<Event>, EventOrder> events_;
  TraceLog trace_;
  double now_ = 0;
  uint64_t seq_ = 0;
  uint64_t next_rkey_ = 1;
  uint64_t next_endpoint_id_ = 1;
  uint64_t rng_state_;
};

}  // namespace rmax::simnet

#endif  // RMAX_SIMNET_SIM_NIC_HPP
