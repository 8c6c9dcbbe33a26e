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

#include "rmax/simnet/sim_nic.hpp"

#include <algorithm>
#include <cstring>

#include "rmax/core/reduce.hpp"

namespace rmax::simnet {

namespace {
constexpr uint64_t kNicAtomicMaxBytes = 8;

bool is_rdma(OpKind k) {
  return k == OpKind::rdma_put || k == OpKind::rdma_get || k == OpKind::nic_atomic;
}

bool is_am(OpKind k) {
  return k == OpKind::am_put || k == OpKind::am_get || k == OpKind::am_accumulate;
}

uint64_t op_length(const TransportOp& op) {
  switch (op.kind) {
    case OpKind::rdma_get:
    case OpKind::am_get:
      return op.get_bytes;
    default:
      return op.payload.size();
  }
}
}  // namespace

/// Per-(issuer, peer, stream) connection. order_floor is the fence watermark:
/// operations submitted after a fence start their network transit no earlier
/// than every delivery already scheduled on this endpoint.
struct SimNic::SimEndpoint : Endpoint {
  double order_floor = 0;
  double max_scheduled_delivery = 0;
  std::vector<TicketPtr> inflight;
};

SimNic::SimNic(SimConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.latency.validate();
  if (cfg_.nranks <= 0) raise(Errc::invalid_value, "nranks must be positive");
  if (cfg_.reorder_jitter_us < 0) raise(Errc::invalid_value, "reorder jitter must be >= 0");
  ranks_.resize(size_t(cfg_.nranks));
  for (auto& r : ranks_) r.arena.assign(cfg_.arena_size, std::byte{0});
  trace_.set_enabled(cfg_.trace_enabled);
  rng_state_ = cfg_.seed * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL;
}

SimNic::~SimNic() = default;

void SimNic::check_rank(Rank r) const {
  if (r < 0 || r >= cfg_.nranks)
    raise(Errc::invalid_value, "rank " + std::to_string(r) + " outside group");
}

double& SimNic::clock(Issuer issuer) {
  auto [it, inserted] = clocks_.try_emplace(issuer, now_);
  return it->second;
}

double SimNic::context_clock(Issuer issuer) const {
  auto it = clocks_.find(issuer);
  return it == clocks_.end() ? now_ : it->second;
}

void SimNic::advance_clock(Issuer issuer, double to_time) {
  double& c = clock(issuer);
  c = std::max(c, to_time);
}

void SimNic::charge(Issuer issuer, double cost_us, TraceKind kind, OpKind op, Rank peer,
                    uint64_t bytes) {
  (void)peer;
  double& c = clock(issuer);
  double start = std::max(c, now_);
  c = start + cost_us;
  trace_.record({start, kind, issuer.rank, issuer.context, 0, op, bytes});
}

void SimNic::schedule(double time, std::function<void()> fn) {
  events_.push(Event{std::max(time, now_), seq_++, std::move(fn)});
}

void SimNic::run_until(const std::function<bool()>& pred) {
  while (!pred()) {
    if (events_.empty())
      raise(Errc::would_deadlock, "simulation idle with an unsatisfied wait");
    Event ev = events_.top();
    events_.pop();
    now_ = ev.time;
    ev.fn();
  }
}

bool SimNic::pump_one() {
  if (events_.empty()) return false;
  Event ev = events_.top();
  events_.pop();
  now_ = ev.time;
  ev.fn();
  return true;
}

void SimNic::run_all() {
  while (pump_one()) {
  }
}

size_t SimNic::am_inbox_depth(Rank r) const {
  check_rank(r);
  return ranks_[size_t(r)].inbox.size();
}

// xorshift* keeps the jitter stream platform-stable.
double SimNic::jitter() {
  uint64_t x = rng_state_;
  x ^= x >> 12;
  x ^= x << 25;
  x ^= x >> 27;
  rng_state_ = x;
  uint64_t bits = (x * 0x2545F4914F6CDD1DULL) >> 11;
  return (double(bits) / double(1ULL << 53)) * cfg_.reorder_jitter_us;
}

uint64_t SimNic::arena_size(Rank r) const {
  check_rank(r);
  return ranks_[size_t(r)].arena.size();
}

std::byte* SimNic::arena(Rank r) {
  check_rank(r);
  return ranks_[size_t(r)].arena.data();
}

const std::byte* SimNic::arena_view(Rank r) const {
  check_rank(r);
  return ranks_[size_t(r)].arena.data();
}

uint64_t SimNic::arena_bytes_written(Rank r) const {
  check_rank(r);
  return ranks_[size_t(r)].bytes_written;
}

RegistrationRecord SimNic::register_memory(Rank r, uint64_t base, uint64_t size,
                                           uint64_t parent_window_id) {
  check_rank(r);
  if (size == 0) raise(Errc::zero_size, "cannot register an empty region");
  RankState& rs = ranks_[size_t(r)];
  if (base > rs.arena.size() || size > rs.arena.size() - base)
    raise(Errc::out_of_arena, "region exceeds the rank arena");
  uint64_t rkey = next_rkey_++;
  rs.registrations[rkey] = Registration{base, size, parent_window_id, true};
  return RegistrationRecord{r, base, size, rkey, parent_window_id};
}

void SimNic::deregister_memory(const RegistrationRecord& rec) {
  check_rank(rec.owner);
  RankState& rs = ranks_[size_t(rec.owner)];
  auto it = rs.registrations.find(rec.rkey);
  if (it == rs.registrations.end())
    raise(Errc::invalid_handle, "unknown registration");
  if (!it->second.live) raise(Errc::already_released, "registration already released");
  it->second.live = false;  // tombstone so double release stays detectable
}

bool SimNic::registration_live(Rank owner, uint64_t rkey) const {
  if (owner < 0 || owner >= cfg_.nranks) return false;
  const RankState& rs = ranks_[size_t(owner)];
  auto it = rs.registrations.find(rkey);
  return it != rs.registrations.end() && it->second.live;
}

Endpoint& SimNic::endpoint(Issuer issuer, Rank peer, uint64_t stream) {
  check_rank(issuer.rank);
  check_rank(peer);
  auto key = std::make_tuple(issuer.rank, issuer.context, peer, stream);
  auto it = endpoints_.find(key);
  if (it == endpoints_.end()) {
    auto ep = std::make_unique<SimEndpoint>();
    ep->id = next_endpoint_id_++;
    ep->owner = issuer;
    ep->peer = peer;
    ep->stream = stream;
    it = endpoints_.emplace(key, std::move(ep)).first;
  }
  return *it->second;
}

void SimNic::fault_op(const TicketPtr& t, Errc code, Rank owner, uint64_t rkey, double time) {
  t->failed = true;
  t->fault = code;
  t->fault_owner = owner;
  t->fault_rkey = rkey;
  trace_.record({time, TraceKind::fault, owner, t->origin.context, t->endpoint_id, t->kind,
                 t->bytes});
  double ack = time + cfg_.latency.t_rtt / 2;
  schedule(ack, [t, ack] {
    t->origin_ack = true;
    t->t_ack = ack;
  });
}

const SimNic::Registration* SimNic::lookup_rdma(const TransportOp& op, uint64_t len) const {
  const RankState& rs = ranks_[size_t(op.target.rank)];
  auto it = rs.registrations.find(op.rkey);
  if (it == rs.registrations.end() || !it->second.live) return nullptr;
  const Registration& reg = it->second;
  if (op.target.vaddr < reg.base || op.target.vaddr - reg.base > reg.size ||
      len > reg.size - (op.target.vaddr - reg.base))
    return nullptr;
  return &reg;
}

bool SimNic::resolve_am_region(const TransportOp& op, uint64_t len) {
  // The target CPU resolves the address against whatever is currently
  // exposed; any live registration containing the range will do.
  const RankState& rs = ranks_[size_t(op.target.rank)];
  for (const auto& [rkey, reg] : rs.registrations) {
    if (!reg.live) continue;
    if (op.target.vaddr >= reg.base && op.target.vaddr - reg.base <= reg.size &&
        len <= reg.size - (op.target.vaddr - reg.base))
      return true;
  }
  return false;
}

void SimNic::apply_payload(const TransportOp& op, Ticket& t, RankState& target) {
  std::byte* dst = target.arena.data() + op.target.vaddr;
  switch (op.kind) {
    case OpKind::rdma_put:
    case OpKind::am_put:
      std::memcpy(dst, op.payload.data(), op.payload.size());
      target.bytes_written += op.payload.size();
      break;
    case OpKind::rdma_get:
    case OpKind::am_get:
      t.fetched.assign(dst, dst + op.get_bytes);
      break;
    case OpKind::nic_atomic:
    case OpKind::am_accumulate: {
      size_t dsize = datatype_size(op.atomic.dtype);
      if (op.atomic.fetch || op.atomic.is_cas)
        t.fetched.assign(dst, dst + op.count * dsize);
      if (op.atomic.is_cas) {
        if (apply_compare_swap(op.atomic.dtype, dst, op.compare.data(), op.payload.data()))
          target.bytes_written += dsize;
      } else {
        target.bytes_written +=
            apply_reduce(op.atomic.op, op.atomic.dtype, op.count, dst, op.payload.data());
      }
      break;
    }
    default:
      break;
  }
}

void SimNic::complete_remote(const TicketPtr& t, const TransportOp& op, double time) {
  t->remote_complete = true;
  t->t_remote = time;
  trace_.record({time, TraceKind::remote_complete, op.target.rank, t->origin.context,
                 t->endpoint_id, t->kind, t->bytes});

  const double half_rtt = cfg_.latency.t_rtt / 2;
  const bool is_get = t->kind == OpKind::rdma_get || t->kind == OpKind::am_get;
  const bool returns_data = !t->fetched.empty() && op.origin_out != nullptr;
  // The payload's wire time is charged on the delivery leg for every RDMA
  // kind; the acknowledgement (or returning data) rides half a round trip.
  double ack = time + half_rtt;
  std::byte* out = op.origin_out;
  std::vector<std::byte> data = t->fetched;
  schedule(ack, [this, t, ack, out, is_get, returns_data, data = std::move(data)] {
    t->origin_ack = true;
    t->t_ack = ack;
    if (returns_data) std::memcpy(out, data.data(), data.size());
    if (!t->local_complete && (is_get || returns_data)) {
      t->local_complete = true;
      t->t_local = ack;
      trace_.record({ack, TraceKind::local_complete, t->origin.rank, t->origin.context,
                     t->endpoint_id, t->kind, t->bytes});
    }
  });
}

void SimNic::deliver_rdma(const TicketPtr& t, TransportOp op, double time) {
  const Registration* reg = lookup_rdma(op, op_length(op));
  if (reg == nullptr) {
    fault_op(t, Errc::stale_rkey, op.target.rank, op.rkey, time);
    return;
  }
  apply_payload(op, *t, ranks_[size_t(op.target.rank)]);
  complete_remote(t, op, time);
}

void SimNic::maybe_schedule_drain(Rank r) {
  RankState& rs = ranks_[size_t(r)];
  if (rs.drain_scheduled || rs.inbox.empty() || !rs.progressing) return;
  rs.drain_scheduled = true;
  double start = std::max(now_, rs.cpu_free_at);
  double done = start + cfg_.latency.t_am_handler;
  rs.cpu_free_at = done;
  schedule(done, [this, r, done] {
    RankState& state = ranks_[size_t(r)];
    state.drain_scheduled = false;
    // A progress disable between scheduling and firing abandons the drain.
    if (!state.progressing || state.inbox.empty()) return;
    AmEntry entry = std::move(state.inbox.front());
    state.inbox.pop_front();
    uint64_t len = op_length(entry.op);
    if (!resolve_am_region(entry.op, len)) {
      fault_op(entry.ticket, Errc::unattached, entry.op.target.rank, 0, done);
    } else {
      apply_payload(entry.op, *entry.ticket, state);
      complete_remote(entry.ticket, entry.op, done);
    }
    maybe_schedule_drain(r);
  });
}

void SimNic::arrive_am(const TicketPtr& t, TransportOp op) {
  Rank target = op.target.rank;
  trace_.record({now_, TraceKind::am_enqueue, target, 0, 0, t->kind, t->bytes});
  ranks_[size_t(target)].inbox.push_back(AmEntry{t, std::move(op)});
  maybe_schedule_drain(target);
}

TicketPtr SimNic::submit(Endpoint& ep_base, TransportOp op) {
  auto& ep = static_cast<SimEndpoint&>(ep_base);
  if (!ep.open) raise(Errc::closed_endpoint, "endpoint is closed");
  check_rank(op.target.rank);
  if (op.kind == OpKind::nic_atomic && op.payload.size() > kNicAtomicMaxBytes)
    raise(Errc::payload_too_large, "NIC atomics are limited to 8 bytes");
  if (op.fence_before) fence(ep);

  const LatencyParams& p = cfg_.latency;
  auto t = std::make_shared<Ticket>();
  t->kind = op.kind;
  t->bytes = op_length(op);

  double submit_time = std::max(clock(ep.owner), now_);
  double inject_done = submit_time + p.t_inject;
  clock(ep.owner) = inject_done;
  t->t_submit = submit_time;
  t->origin = ep.owner;
  t->endpoint_id = ep.id;
  trace_.record({submit_time, TraceKind::submit, ep.owner.rank, ep.owner.context, ep.id,
                 op.kind, t->bytes});

  // Origin-side local completion: the payload has been consumed.
  if (op.kind == OpKind::rdma_put || op.kind == OpKind::nic_atomic ||
      op.kind == OpKind::am_put || op.kind == OpKind::am_accumulate) {
    Issuer owner = ep.owner;
    uint64_t epid = ep.id;
    schedule(inject_done, [this, t, inject_done, owner, epid] {
      t->local_complete = true;
      t->t_local = inject_done;
      trace_.record({inject_done, TraceKind::local_complete, owner.rank, owner.context, epid,
                     t->kind, t->bytes});
    });
  }

  const double half_rtt = p.t_rtt / 2;
  const double wire = double(t->bytes) / p.bandwidth;
  if (is_rdma(op.kind)) {
    double start = std::max(inject_done, ep.order_floor);
    double deliver = start + half_rtt + wire;
    if (op.kind == OpKind::nic_atomic) deliver += p.t_atomic_nic;
    if (op.kind == OpKind::rdma_put || op.kind == OpKind::rdma_get) deliver += jitter();
    ep.max_scheduled_delivery = std::max(ep.max_scheduled_delivery, deliver);
    schedule(deliver, [this, t, op = std::move(op), deliver]() mutable {
      deliver_rdma(t, std::move(op), deliver);
    });
  } else if (is_am(op.kind)) {
    double arrive = inject_done + half_rtt + wire;
    schedule(arrive, [this, t, op = std::move(op)]() mutable { arrive_am(t, std::move(op)); });
  } else {
    raise(Errc::invalid_value, "rkey_fetch is not a submittable kind");
  }

  ep.inflight.push_back(t);
  return t;
}

void SimNic::fence(Endpoint& ep_base) {
  auto& ep = static_cast<SimEndpoint&>(ep_base);
  if (!ep.open) raise(Errc::closed_endpoint, "endpoint is closed");
  ep.order_floor = std::max(ep.order_floor, ep.max_scheduled_delivery);
  trace_.record({std::max(context_clock(ep.owner), now_), TraceKind::fence, ep.owner.rank,
                 ep.owner.context, ep.id, OpKind::none, 0});
}

void SimNic::wait_tickets(Issuer caller, std::span<const TicketPtr> tickets, bool local_only) {
  run_until([&] {
    return std::all_of(tickets.begin(), tickets.end(),
                       [&](const TicketPtr& t) { return t->done(local_only); });
  });
  double reach = context_clock(caller);
  for (const TicketPtr& t : tickets) {
    double done_at = t->failed ? t->t_ack : (local_only ? t->t_local : t->t_ack);
    reach = std::max(reach, done_at);
  }
  advance_clock(caller, reach);
}

void SimNic::flush_endpoint(Issuer caller, Endpoint& ep_base, bool local_only) {
  auto& ep = static_cast<SimEndpoint&>(ep_base);
  wait_tickets(caller, ep.inflight, local_only);
  Errc fault = Errc::ok;
  for (const TicketPtr& t : ep.inflight)
    if (t->failed && t->origin_ack && fault == Errc::ok) fault = t->fault;
  std::erase_if(ep.inflight, [](const TicketPtr& t) { return t->done(false); });
  if (fault != Errc::ok) raise(fault, "operation faulted during flush");
}

void SimNic::set_progress(Rank r, bool progressing) {
  check_rank(r);
  RankState& rs = ranks_[size_t(r)];
  rs.progressing = progressing;
  if (progressing) {
    rs.cpu_free_at = std::max(rs.cpu_free_at, now_);
    maybe_schedule_drain(r);
  }
}

void SimNic::set_progress_at(Rank r, double time_us, bool progressing) {
  check_rank(r);
  schedule(time_us, [this, r, progressing] { set_progress(r, progressing); });
}

}  // namespace rmax::simnet
