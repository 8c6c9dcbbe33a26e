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

#ifndef RMAX_SIMNET_TRANSPORT_HPP
#define RMAX_SIMNET_TRANSPORT_HPP

#include <memory>
#include <span>
#include <vector>

#include "rmax/core/latency.hpp"
#include "rmax/core/types.hpp"
#include "rmax/simnet/capability.hpp"
#include "rmax/simnet/trace.hpp"

namespace rmax::simnet {

/// Atomic semantics attached to nic_atomic and am_accumulate operations.
struct AtomicSpec {
  bool is_cas = false;
  bool fetch = false;  // return the previous target contents to the origin
  ReduceOp op = ReduceOp::replace;
  Datatype dtype = Datatype::byte;
};

/// One operation handed to a transport endpoint. Payloads are captured by
/// value at submit time; result pointers must stay valid until completion.
struct TransportOp {
  OpKind kind = OpKind::rdma_put;
  Address target;
  uint64_t rkey = 0;
  std::vector<std::byte> payload;  // put/accumulate operand; cas desired value
  std::vector<std::byte> compare;  // cas compare operand
  uint64_t get_bytes = 0;          // rdma_get / am_get read size
  std::byte* origin_out = nullptr; // destination for get / fetched values
  AtomicSpec atomic;
  size_t count = 0;                // elements, accumulate family
  bool fence_before = false;
};

/// Completion state of one submitted operation.
///
/// local_complete: the origin buffer is reusable (for gets and fetching
/// atomics this coincides with data arrival at the origin).
/// remote_complete: the effect is visible in target memory.
/// origin_ack: the origin has learned of remote completion (or of a fault);
/// requests with remote completion semantics finish here.
struct Ticket {
  OpKind kind = OpKind::rdma_put;
  uint64_t bytes = 0;
  Issuer origin;
  uint64_t endpoint_id = 0;
  bool local_complete = false;
  bool remote_complete = false;
  bool origin_ack = false;
  bool failed = false;
  Errc fault = Errc::ok;
  Rank fault_owner = 0;
  uint64_t fault_rkey = 0;
  double t_submit = 0;
  double t_local = 0;
  double t_remote = 0;
  double t_ack = 0;
  std::vector<std::byte> fetched;  // get / fetch_and_op / cas old value

  bool done(bool local_only) const {
    if (failed) return origin_ack;
    return local_only ? local_complete : origin_ack;
  }
};

using TicketPtr = std::shared_ptr<Ticket>;

/// A connection from one issuer context to one peer. Endpoints are created
/// lazily on first use and keyed by (issuer, peer, stream), where a stream
/// isolates the ordering domain of one window family.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  uint64_t id = 0;
  Issuer owner;
  Rank peer = 0;
  uint64_t stream = 0;
  bool open = true;
};

class Transport {
 public:
  virtual ~Transport() = default;

  virtual bool simulated() const = 0;
  virtual int nranks() const = 0;

  // Simulated memory.
  virtual uint64_t arena_size(Rank r) const = 0;
  virtual std::byte* arena(Rank r) = 0;
  virtual const std::byte* arena_view(Rank r) const = 0;
  virtual uint64_t arena_bytes_written(Rank r) const = 0;

  // Registration lifetime.
  virtual RegistrationRecord register_memory(Rank r, uint64_t base, uint64_t size,
                                             uint64_t parent_window_id) = 0;
  virtual void deregister_memory(const RegistrationRecord& rec) = 0;
  virtual bool registration_live(Rank owner, uint64_t rkey) const = 0;

  // Operation path.
  virtual Endpoint& endpoint(Issuer issuer, Rank peer, uint64_t stream) = 0;
  virtual TicketPtr submit(Endpoint& ep, TransportOp op) = 0;
  virtual void fence(Endpoint& ep) = 0;

  /// Quiesces one endpoint; throws the first fault encountered after all
  /// in-flight operations have settled.
  virtual void flush_endpoint(Issuer caller, Endpoint& ep, bool local_only) = 0;

  /// Waits for an explicit ticket set without throwing; callers inspect
  /// ticket state afterwards.
  virtual void wait_tickets(Issuer caller, std::span<const TicketPtr> tickets,
                            bool local_only) = 0;

  /// Drives progress by one step. Returns false when nothing is pending.
  virtual bool pump_one() = 0;

  // Capabilities and progress.
  virtual const CapabilityTable& capabilities() const = 0;
  virtual bool nic_atomics_available() const = 0;
  virtual void set_progress(Rank r, bool progressing) = 0;

  // Virtual time. The loopback transport reports zero cost everywhere.
  virtual const LatencyParams& params() const = 0;
  virtual double context_clock(Issuer issuer) const = 0;
  virtual void charge(Issuer issuer, double cost_us, TraceKind kind, OpKind op, Rank peer,
                      uint64_t bytes) = 0;
  virtual void advance_clock(Issuer issuer, double to_time) = 0;

  virtual TraceLog& trace() = 0;
};

}  // namespace rmax::simnet

#endif  // RMAX_SIMNET_TRANSPORT_HPP
