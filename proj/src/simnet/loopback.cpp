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

#include "rmax/simnet/loopback.hpp"

#include <cstring>

#include "rmax/core/reduce.hpp"

namespace rmax::simnet {

LoopbackTransport::LoopbackTransport(LoopbackConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.nranks <= 0) raise(Errc::invalid_value, "nranks must be positive");
  ranks_.reserve(size_t(cfg_.nranks));
  for (int i = 0; i < cfg_.nranks; ++i) {
    auto rs = std::make_unique<RankState>();
    rs->arena.assign(cfg_.arena_size, std::byte{0});
    ranks_.push_back(std::move(rs));
  }
  trace_.set_enabled(false);
}

LoopbackTransport::~LoopbackTransport() = default;

void LoopbackTransport::check_rank(Rank r) const {
  if (r < 0 || r >= cfg_.nranks)
    raise(Errc::invalid_value, "rank " + std::to_string(r) + " outside group");
}

uint64_t LoopbackTransport::arena_size(Rank r) const {
  check_rank(r);
  return ranks_[size_t(r)]->arena.size();
}

std::byte* LoopbackTransport::arena(Rank r) {
  check_rank(r);
  return ranks_[size_t(r)]->arena.data();
}

const std::byte* LoopbackTransport::arena_view(Rank r) const {
  check_rank(r);
  return ranks_[size_t(r)]->arena.data();
}

uint64_t LoopbackTransport::arena_bytes_written(Rank r) const {
  check_rank(r);
  return ranks_[size_t(r)]->bytes_written.load();
}

RegistrationRecord LoopbackTransport::register_memory(Rank r, uint64_t base, uint64_t size,
                                                      uint64_t parent_window_id) {
  check_rank(r);
  if (size == 0) raise(Errc::zero_size, "cannot register an empty region");
  RankState& rs = *ranks_[size_t(r)];
  std::lock_guard<std::mutex> lk(rs.mu);
  if (base > rs.arena.size() || size > rs.arena.size() - base)
    raise(Errc::out_of_arena, "region exceeds the rank arena");
  uint64_t rkey = next_rkey_.fetch_add(1);
  rs.registrations[rkey] = Registration{base, size, true};
  return RegistrationRecord{r, base, size, rkey, parent_window_id};
}

void LoopbackTransport::deregister_memory(const RegistrationRecord& rec) {
  check_rank(rec.owner);
  RankState& rs = *ranks_[size_t(rec.owner)];
  std::lock_guard<std::mutex> lk(rs.mu);
  auto it = rs.registrations.find(rec.rkey);
  if (it == rs.registrations.end()) raise(Errc::invalid_handle, "unknown registration");
  if (!it->second.live) raise(Errc::already_released, "registration already released");
  it->second.live = false;
}

bool LoopbackTransport::registration_live(Rank owner, uint64_t rkey) const {
  if (owner < 0 || owner >= cfg_.nranks) return false;
  RankState& rs = *ranks_[size_t(owner)];
  std::lock_guard<std::mutex> lk(rs.mu);
  auto it = rs.registrations.find(rkey);
  return it != rs.registrations.end() && it->second.live;
}

Endpoint& LoopbackTransport::endpoint(Issuer issuer, Rank peer, uint64_t stream) {
  check_rank(issuer.rank);
  check_rank(peer);
  std::lock_guard<std::mutex> lk(endpoints_mu_);
  auto key = std::make_tuple(issuer.rank, issuer.context, peer, stream);
  auto it = endpoints_.find(key);
  if (it == endpoints_.end()) {
    auto ep = std::make_unique<Endpoint>();
    ep->id = next_endpoint_id_.fetch_add(1);
    ep->owner = issuer;
    ep->peer = peer;
    ep->stream = stream;
    it = endpoints_.emplace(key, std::move(ep)).first;
  }
  return *it->second;
}

TicketPtr LoopbackTransport::submit(Endpoint& ep, TransportOp op) {
  if (!ep.open) raise(Errc::closed_endpoint, "endpoint is closed");
  check_rank(op.target.rank);
  if (op.kind == OpKind::nic_atomic && op.payload.size() > 8)
    raise(Errc::payload_too_large, "NIC atomics are limited to 8 bytes");

  auto t = std::make_shared<Ticket>();
  t->kind = op.kind;
  t->origin = ep.owner;
  t->endpoint_id = ep.id;
  uint64_t len = (op.kind == OpKind::rdma_get || op.kind == OpKind::am_get) ? op.get_bytes
                                                                            : op.payload.size();
  t->bytes = len;

  RankState& rs = *ranks_[size_t(op.target.rank)];
  std::lock_guard<std::mutex> lk(rs.mu);

  auto in_live_region = [&](uint64_t rkey, bool any) {
    for (const auto& [key, reg] : rs.registrations) {
      if (!reg.live || (!any && key != rkey)) continue;
      if (op.target.vaddr >= reg.base && op.target.vaddr - reg.base <= reg.size &&
          len <= reg.size - (op.target.vaddr - reg.base))
        return true;
    }
    return false;
  };
  const bool am_kind = op.kind == OpKind::am_put || op.kind == OpKind::am_get ||
                       op.kind == OpKind::am_accumulate;
  if (!in_live_region(op.rkey, am_kind)) {
    t->failed = true;
    t->fault = am_kind ? Errc::unattached : Errc::stale_rkey;
    t->fault_owner = op.target.rank;
    t->fault_rkey = op.rkey;
    t->origin_ack = true;
    return t;
  }

  std::byte* dst = rs.arena.data() + op.target.vaddr;
  switch (op.kind) {
    case OpKind::rdma_put:
    case OpKind::am_put:
      std::memcpy(dst, op.payload.data(), op.payload.size());
      rs.bytes_written.fetch_add(op.payload.size());
      break;
    case OpKind::rdma_get:
    case OpKind::am_get:
      if (op.origin_out) std::memcpy(op.origin_out, dst, op.get_bytes);
      break;
    case OpKind::nic_atomic:
    case OpKind::am_accumulate: {
      size_t dsize = datatype_size(op.atomic.dtype);
      if ((op.atomic.fetch || op.atomic.is_cas) && op.origin_out)
        std::memcpy(op.origin_out, dst, op.count * dsize);
      if (op.atomic.is_cas) {
        if (apply_compare_swap(op.atomic.dtype, dst, op.compare.data(), op.payload.data()))
          rs.bytes_written.fetch_add(dsize);
      } else {
        rs.bytes_written.fetch_add(
            apply_reduce(op.atomic.op, op.atomic.dtype, op.count, dst, op.payload.data()));
      }
      break;
    }
    default:
      raise(Errc::invalid_value, "rkey_fetch is not a submittable kind");
  }

  t->local_complete = true;
  t->remote_complete = true;
  t->origin_ack = true;
  return t;
}

void LoopbackTransport::flush_endpoint(Issuer, Endpoint&, bool) {
  // Nothing is ever in flight: submission is completion.
}

}  // namespace rmax::simnet
