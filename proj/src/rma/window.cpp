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

#include "rmax/rma/window.hpp"

#include <algorithm>
#include <cstring>

#include "rmax/core/ops_string.hpp"
#include "family.hpp"

namespace rmax::rma {

namespace {

bool is_accumulate(Verb v) {
  return v == Verb::accumulate || v == Verb::get_accumulate || v == Verb::fetch_and_op ||
         v == Verb::compare_and_swap;
}

bool fetches(Verb v) {
  return v == Verb::get_accumulate || v == Verb::fetch_and_op || v == Verb::compare_and_swap;
}

}  // namespace

// ---------------------------------------------------------------------------
// Request

bool Request::is_done() const { return ticket_->done(!remote_); }

void Request::surface_fault() const {
  if (ticket_->failed) raise(ticket_->fault, "request-based operation faulted");
}

bool Request::test() {
  if (!ticket_) raise(Errc::invalid_handle, "empty request");
  if (!is_done()) tx_->pump_one();
  if (!is_done()) return false;
  surface_fault();
  tx_->advance_clock(issuer_, remote_ ? ticket_->t_ack : ticket_->t_local);
  return true;
}

void Request::wait() {
  if (!ticket_) raise(Errc::invalid_handle, "empty request");
  simnet::TicketPtr arr[1] = {ticket_};
  tx_->wait_tickets(issuer_, arr, !remote_);
  surface_fault();
}

// ---------------------------------------------------------------------------
// Window basics

Window::Window(std::shared_ptr<FamilyState> fam, uint64_t id, WindowKind kind, InfoMap info)
    : fam_(std::move(fam)), id_(id), kind_(kind), info_(std::move(info)) {}

Window::~Window() = default;

void Window::ensure_usable() const {
  if (freed_) raise(Errc::invalid_handle, "window already freed");
}

InfoMap Window::get_info() const {
  ensure_usable();
  std::lock_guard<std::mutex> lk(fam_->mu);
  return info_.effective();
}

void Window::set_info(const InfoMap& info) {
  ensure_usable();
  std::lock_guard<std::mutex> lk(fam_->mu);
  for (const auto& [k, v] : info.entries()) info_.set(k, v);
}

bool Window::op_intrinsic(const std::string& ops, size_t max_count, Datatype dtype) const {
  ensure_usable();
  OpSet set = parse_ops_string(ops);
  bool path_permits =
      fam_->tx->nic_atomics_available() &&
      !(fam_->base_kind == WindowKind::dynamic && kind_ != WindowKind::memhandle &&
        info_.dynamic_mode() == DynamicMode::am);
  if (!path_permits) return false;
  return fam_->tx->capabilities().query_all(set, dtype, max_count);
}

// ---------------------------------------------------------------------------
// Epochs

void Window::lock(Issuer issuer, Rank target, LockMode mode) {
  ensure_usable();
  if (kind_ == WindowKind::memhandle)
    raise(Errc::unsupported_operation, "lock/unlock must be applied to the parent window");
  FamilyState& f = *fam_;
  std::unique_lock<std::mutex> lk(f.mu);
  if (target < 0 || target >= f.nranks) raise(Errc::invalid_value, "target outside group");
  if (f.has_epoch(issuer.rank, target))
    raise(Errc::double_lock, "origin already holds an epoch to this target on this window family");

  auto& st = f.lock_state[size_t(target)];
  auto conflicts = [&] {
    return st.exclusive_held || (mode == LockMode::exclusive && st.shared_held > 0);
  };
  if (conflicts()) {
    if (f.tx->simulated())
      raise(Errc::would_deadlock, "lock is held and the holder cannot run; grant impossible");
    f.cv.wait(lk, [&] { return !conflicts(); });
  } else if (f.tx->simulated()) {
    // Virtual-time wait for the releasing epoch.
    double grant_at =
        mode == LockMode::exclusive ? st.free_of_all_at : st.free_of_exclusive_at;
    f.tx->advance_clock(issuer, grant_at);
  }
  if (mode == LockMode::exclusive) {
    st.exclusive_held = true;
    st.exclusive_owner = issuer.rank;
  } else {
    st.shared_held++;
  }
  f.held[{issuer.rank, target}] = {mode, id_};
}

void Window::unlock(Issuer issuer, Rank target) {
  ensure_usable();
  if (kind_ == WindowKind::memhandle)
    raise(Errc::unsupported_operation, "lock/unlock must be applied to the parent window");
  FamilyState& f = *fam_;
  {
    std::lock_guard<std::mutex> lk(f.mu);
    auto it = f.held.find({issuer.rank, target});
    if (it == f.held.end()) raise(Errc::unlock_without_lock, "no lock held to this target");
  }
  // Unlock implies remote completion of every op this rank issued to the
  // target on the whole family, regardless of the window's flush scope.
  flush_ticket_sets(issuer, target, false, true);
  std::lock_guard<std::mutex> lk(f.mu);
  auto it = f.held.find({issuer.rank, target});
  if (it == f.held.end()) raise(Errc::unlock_without_lock, "no lock held to this target");
  auto& st = f.lock_state[size_t(target)];
  double release_at = f.tx->context_clock(issuer);
  if (it->second.first == LockMode::exclusive) {
    st.exclusive_held = false;
    st.exclusive_owner = -1;
    st.free_of_exclusive_at = std::max(st.free_of_exclusive_at, release_at);
  } else {
    st.shared_held--;
  }
  st.free_of_all_at = std::max(st.free_of_all_at, release_at);
  f.held.erase(it);
  f.cv.notify_all();
}

void Window::lock_all(Issuer issuer) {
  ensure_usable();
  if (kind_ == WindowKind::memhandle)
    raise(Errc::unsupported_operation, "lock/unlock must be applied to the parent window");
  FamilyState& f = *fam_;
  std::unique_lock<std::mutex> lk(f.mu);
  if (f.lock_all_via.contains(issuer.rank))
    raise(Errc::double_lock, "lock_all already held on this window family");
  for (Rank t = 0; t < f.nranks; ++t)
    if (f.held.contains({issuer.rank, t}))
      raise(Errc::double_lock, "per-target lock already held on this window family");

  auto conflicts = [&] {
    return std::any_of(f.lock_state.begin(), f.lock_state.end(),
                       [](const auto& st) { return st.exclusive_held; });
  };
  if (conflicts()) {
    if (f.tx->simulated())
      raise(Errc::would_deadlock, "exclusive lock held; grant impossible");
    f.cv.wait(lk, [&] { return !conflicts(); });
  } else if (f.tx->simulated()) {
    double grant_at = 0;
    for (const auto& st : f.lock_state) grant_at = std::max(grant_at, st.free_of_exclusive_at);
    f.tx->advance_clock(issuer, grant_at);
  }
  for (auto& st : f.lock_state) st.shared_held++;
  f.lock_all_via[issuer.rank] = id_;
}

void Window::unlock_all(Issuer issuer) {
  ensure_usable();
  if (kind_ == WindowKind::memhandle)
    raise(Errc::unsupported_operation, "lock/unlock must be applied to the parent window");
  FamilyState& f = *fam_;
  {
    std::lock_guard<std::mutex> lk(f.mu);
    if (!f.lock_all_via.contains(issuer.rank))
      raise(Errc::unlock_without_lock, "no lock_all epoch held");
  }
  flush_ticket_sets(issuer, std::nullopt, false, true);
  std::lock_guard<std::mutex> lk(f.mu);
  double release_at = f.tx->context_clock(issuer);
  for (auto& st : f.lock_state) {
    st.shared_held--;
    st.free_of_all_at = std::max(st.free_of_all_at, release_at);
  }
  f.lock_all_via.erase(issuer.rank);
  f.cv.notify_all();
}

// ---------------------------------------------------------------------------
// Dynamic window attach/detach

void Window::attach(Rank rank, uint64_t base, uint64_t size) {
  ensure_usable();
  if (kind_ != WindowKind::dynamic)
    raise(Errc::unsupported_operation, "attach requires a dynamic window");
  FamilyState& f = *fam_;
  std::lock_guard<std::mutex> lk(f.mu);
  if (rank < 0 || rank >= f.nranks) raise(Errc::invalid_value, "rank outside group");
  if (size == 0) raise(Errc::zero_size, "cannot attach an empty region");
  auto& table = f.attached[size_t(rank)];
  for (const auto& [b, rec] : table) {
    if (base < b + rec.size && b < base + size)
      raise(Errc::overlap, "region overlaps an attached region");
  }
  RegistrationRecord rec = f.tx->register_memory(rank, base, size, f.family_id);
  table[base] = rec;
}

void Window::detach(Rank rank, uint64_t base) {
  ensure_usable();
  if (kind_ != WindowKind::dynamic)
    raise(Errc::unsupported_operation, "detach requires a dynamic window");
  FamilyState& f = *fam_;
  std::lock_guard<std::mutex> lk(f.mu);
  if (rank < 0 || rank >= f.nranks) raise(Errc::invalid_value, "rank outside group");
  auto& table = f.attached[size_t(rank)];
  auto it = table.find(base);
  if (it == table.end()) raise(Errc::unknown_base, "no region attached at this base");
  f.tx->deregister_memory(it->second);
  table.erase(it);
}

// ---------------------------------------------------------------------------
// Operation issue

std::optional<Request> Window::issue(Issuer issuer, const OpDescriptor& od) {
  ensure_usable();
  FamilyState& f = *fam_;
  std::lock_guard<std::mutex> lk(f.mu);

  if (od.target < 0 || od.target >= f.nranks) raise(Errc::invalid_value, "target outside group");
  if (kind_ == WindowKind::memhandle && od.target != mh_target_)
    raise(Errc::invalid_target, "memhandle windows have a single allowed target");
  if (!f.has_epoch(issuer.rank, od.target))
    raise(Errc::no_epoch, "no access epoch open to the target");

  const size_t dsize = datatype_size(od.dtype);
  if (od.count == 0) raise(Errc::invalid_value, "count must be positive");
  if ((od.verb == Verb::fetch_and_op || od.verb == Verb::compare_and_swap) && od.count != 1)
    raise(Errc::invalid_value, "single-element operation");
  if (is_accumulate(od.verb) && od.verb != Verb::compare_and_swap &&
      !reduce_valid_for(od.op, od.dtype))
    raise(Errc::invalid_value, "bitwise reduce ops require integral datatypes");
  if ((od.verb == Verb::put || od.verb == Verb::accumulate || od.verb == Verb::get_accumulate ||
       od.verb == Verb::fetch_and_op) &&
      od.origin == nullptr && od.op != ReduceOp::no_op)
    raise(Errc::invalid_value, "origin buffer required");
  if ((od.verb == Verb::get || fetches(od.verb)) && od.result == nullptr)
    raise(Errc::invalid_value, "result buffer required");
  if (od.verb == Verb::compare_and_swap && (od.compare == nullptr || od.origin == nullptr))
    raise(Errc::invalid_value, "compare and desired values required");

  const uint64_t len = od.count * dsize;

  // Resolve the target address and transport path.
  uint64_t vaddr = 0;
  uint64_t rkey = 0;
  bool rdma_path = true;

  if (kind_ == WindowKind::memhandle) {
    vaddr = mh_record_.base + od.disp * uint64_t(mh_disp_unit_);
    if (od.disp * uint64_t(mh_disp_unit_) + len > mh_size_)
      raise(Errc::out_of_range, "access beyond the memhandle window extent");
    rkey = mh_record_.rkey;  // the lifetime guarantee: no fetch, no validation
  } else if (f.base_kind == WindowKind::allocated) {
    uint64_t off = od.disp * uint64_t(f.disp_unit);
    if (off + len > f.sizes[size_t(od.target)])
      raise(Errc::out_of_range, "access beyond the target's exposed region");
    vaddr = f.bases[size_t(od.target)] + off;
    rkey = f.allocated_regs[size_t(od.target)]->rkey;
  } else {
    vaddr = od.disp;  // dynamic windows address by absolute vaddr
    if (info_.dynamic_mode() == DynamicMode::am) {
      rdma_path = false;
    } else {
      rkey = resolve_dynamic_rkey(issuer, od.target, vaddr, len);
    }
  }

  // Accumulate routing: NIC atomics only under the intrinsic assertion.
  simnet::TransportOp top;
  if (is_accumulate(od.verb)) {
    simnet::AtomicOpKey key{od.verb == Verb::compare_and_swap, od.op};
    bool intrinsic = rdma_path && fam_->tx->nic_atomics_available() &&
                     fam_->tx->capabilities().query(key, od.dtype, od.count);
    bool use_nic = false;
    if (info_.assert_accumulate_intrinsic()) {
      if (!intrinsic && f.checked)
        raise(Errc::assertion_violation,
              "accumulate configuration is not intrinsic but the window asserts it");
      use_nic = intrinsic;
    }
    top.kind = use_nic ? simnet::OpKind::nic_atomic : simnet::OpKind::am_accumulate;
    top.atomic.is_cas = od.verb == Verb::compare_and_swap;
    top.atomic.fetch = fetches(od.verb);
    top.atomic.op = od.verb == Verb::compare_and_swap ? ReduceOp::replace : od.op;
    top.atomic.dtype = od.dtype;
    top.count = od.count;
    top.payload.assign(len, std::byte{0});
    if (od.origin != nullptr)
      std::memcpy(top.payload.data(), od.origin, len);
    if (od.verb == Verb::compare_and_swap) {
      top.compare.resize(dsize);
      std::memcpy(top.compare.data(), od.compare, dsize);
    }
    top.origin_out = static_cast<std::byte*>(od.result);
  } else if (od.verb == Verb::put) {
    top.kind = rdma_path ? simnet::OpKind::rdma_put : simnet::OpKind::am_put;
    top.payload.resize(len);
    std::memcpy(top.payload.data(), od.origin, len);
  } else {  // get
    top.kind = rdma_path ? simnet::OpKind::rdma_get : simnet::OpKind::am_get;
    top.get_bytes = len;
    top.origin_out = static_cast<std::byte*>(od.result);
  }
  top.target = Address{od.target, vaddr};
  top.rkey = rkey;

  // Endpoint selection: ordered windows fence each op; with process scope
  // every context funnels through one designated endpoint per target.
  Issuer ep_owner = issuer;
  if (info_.ordered() && info_.scope() == WinScope::process) {
    // Pin the funnel to the lowest context that has already touched this
    // target, falling back to the caller; stable for the family's lifetime.
    auto probe = f.endpoints_used.lower_bound({issuer.rank, INT32_MIN, od.target});
    int32_t lowest = issuer.context;
    for (auto it = probe; it != f.endpoints_used.end(); ++it) {
      const auto& [erank, ectx, etarget] = *it;
      if (erank != issuer.rank) break;
      if (etarget != od.target) continue;
      lowest = std::min(lowest, ectx);
      break;  // set is ordered, first hit for this rank is the lowest context
    }
    auto [it, inserted] = f.funnel_ctx.try_emplace({issuer.rank, od.target}, lowest);
    ep_owner.context = it->second;
  }
  simnet::Endpoint& ep = f.tx->endpoint(ep_owner, od.target, f.family_id);
  if (info_.ordered()) f.tx->fence(ep);
  simnet::TicketPtr ticket = f.tx->submit(ep, std::move(top));
  if (ep_owner != issuer)
    f.tx->advance_clock(issuer, f.tx->context_clock(ep_owner));

  f.endpoints_used.insert({ep_owner.rank, ep_owner.context, od.target});
  f.outstanding[{issuer.rank, issuer.context, od.target}].push_back(ticket);

  if (od.completion == Completion::implicit) return std::nullopt;
  // Gets already signal data arrival through their local completion, so a
  // remote request degenerates to the local one.
  bool remote = od.completion == Completion::remote_request && od.verb != Verb::get;
  f.request_tickets[id_].push_back(ticket);
  return Request(f.tx, ticket, issuer, remote);
}

uint64_t Window::resolve_dynamic_rkey(Issuer issuer, Rank target, uint64_t vaddr, uint64_t len) {
  FamilyState& f = *fam_;
  auto cache_begin = f.rkey_cache.lower_bound({issuer.rank, target, 0});
  const RegistrationRecord* cached = nullptr;
  uint64_t cached_base = 0;
  for (auto it = cache_begin; it != f.rkey_cache.end(); ++it) {
    const auto& [key, rec] = *it;
    if (std::get<0>(key) != issuer.rank || std::get<1>(key) != target) break;
    if (vaddr >= rec.base && vaddr - rec.base <= rec.size && len <= rec.size - (vaddr - rec.base)) {
      cached = &rec;
      cached_base = std::get<2>(key);
      break;
    }
  }

  const LatencyParams& p = f.tx->params();
  if (cached != nullptr) {
    if (!f.checked) return cached->rkey;  // trust the cache, fault at delivery
    // Checked mode verifies the cached registration on every operation.
    f.tx->charge(issuer, p.t_rkey_fetch, simnet::TraceKind::rkey_fetch,
                 simnet::OpKind::rkey_fetch, target, 0);
    if (!f.tx->registration_live(target, cached->rkey)) {
      f.rkey_cache.erase({issuer.rank, target, cached_base});
      raise(Errc::stale_rkey, "cached registration was invalidated by the target");
    }
    return cached->rkey;
  }

  // Cache miss: fetch the registration info from the target.
  f.tx->charge(issuer, p.t_rkey_fetch, simnet::TraceKind::rkey_fetch, simnet::OpKind::rkey_fetch,
               target, 0);
  for (const auto& [base, rec] : f.attached[size_t(target)]) {
    if (vaddr >= base && vaddr - base <= rec.size && len <= rec.size - (vaddr - base)) {
      f.rkey_cache[{issuer.rank, target, base}] = rec;
      return rec.rkey;
    }
  }
  raise(Errc::target_unresolved, "no attached region covers the requested address");
}

// ---------------------------------------------------------------------------
// Flushes

void Window::flush_impl(Issuer issuer, std::optional<Rank> target, bool local_only) {
  flush_ticket_sets(issuer, target, local_only, false);
}

void Window::flush_ticket_sets(Issuer issuer, std::optional<Rank> target, bool local_only,
                               bool for_unlock) {
  ensure_usable();
  FamilyState& f = *fam_;
  std::vector<simnet::TicketPtr> waiting;
  {
    std::lock_guard<std::mutex> lk(f.mu);
    if (!for_unlock) {
      bool any_epoch = f.lock_all_via.contains(issuer.rank);
      if (!any_epoch) {
        if (target) {
          any_epoch = f.held.contains({issuer.rank, *target});
        } else {
          for (Rank t = 0; t < f.nranks && !any_epoch; ++t)
            any_epoch = f.held.contains({issuer.rank, t});
        }
      }
      if (!any_epoch) raise(Errc::no_epoch, "flush requires an open access epoch");
    }

    const bool process_scope = for_unlock || info_.scope() == WinScope::process;
    for (auto& [key, tickets] : f.outstanding) {
      const auto& [orank, octx, otarget] = key;
      if (orank != issuer.rank) continue;
      if (target && otarget != *target) continue;
      if (!process_scope && octx != issuer.context) continue;
      waiting.insert(waiting.end(), tickets.begin(), tickets.end());
    }
  }

  f.tx->wait_tickets(issuer, waiting, local_only);

  std::lock_guard<std::mutex> lk(f.mu);
  {
    // Visit cost of the endpoint walk. Process scope iterates the endpoints
    // of every context of this rank; thread scope only the caller's.
    const bool process_scope = for_unlock || info_.scope() == WinScope::process;
    const LatencyParams& p = f.tx->params();
    for (const auto& key : f.endpoints_used) {
      const auto& [erank, ectx, etarget] = key;
      if (erank != issuer.rank) continue;
      if (target && etarget != *target) continue;
      if (!process_scope && ectx != issuer.context) continue;
      f.tx->charge(issuer, p.t_inject, simnet::TraceKind::flush, simnet::OpKind::none, etarget,
                   0);
    }
  }
  Errc fault = Errc::ok;
  for (const auto& t : waiting) {
    if (t->failed && t->origin_ack) {
      if (fault == Errc::ok) fault = t->fault;
      if (t->fault == Errc::stale_rkey && t->fault_rkey != 0)
        std::erase_if(f.rkey_cache,
                      [&](const auto& kv) { return kv.second.rkey == t->fault_rkey; });
    }
  }
  auto settled = [](const simnet::TicketPtr& t) { return t->done(false); };
  for (auto& [key, tickets] : f.outstanding) std::erase_if(tickets, settled);
  for (auto& [wid, tickets] : f.request_tickets) std::erase_if(tickets, settled);
  if (fault != Errc::ok) raise(fault, "operation faulted during flush");
}

void Window::flush(Issuer issuer, Rank target) { flush_impl(issuer, target, false); }
void Window::flush_all(Issuer issuer) { flush_impl(issuer, std::nullopt, false); }
void Window::flush_local(Issuer issuer, Rank target) { flush_impl(issuer, target, true); }
void Window::flush_local_all(Issuer issuer) { flush_impl(issuer, std::nullopt, true); }

// ---------------------------------------------------------------------------
// Convenience wrappers

void Window::put(Issuer issuer, const void* src, size_t count, Datatype dtype, Rank target,
                 uint64_t disp) {
  issue(issuer, {.verb = Verb::put, .origin = src, .count = count, .dtype = dtype,
                 .target = target, .disp = disp});
}

Request Window::rput(Issuer issuer, const void* src, size_t count, Datatype dtype, Rank target,
                     uint64_t disp) {
  return *issue(issuer, {.verb = Verb::put, .origin = src, .count = count, .dtype = dtype,
                         .target = target, .disp = disp,
                         .completion = Completion::local_request});
}

Request Window::rrput(Issuer issuer, const void* src, size_t count, Datatype dtype, Rank target,
                      uint64_t disp) {
  return *issue(issuer, {.verb = Verb::put, .origin = src, .count = count, .dtype = dtype,
                         .target = target, .disp = disp,
                         .completion = Completion::remote_request});
}

void Window::get(Issuer issuer, void* dst, size_t count, Datatype dtype, Rank target,
                 uint64_t disp) {
  issue(issuer, {.verb = Verb::get, .result = dst, .count = count, .dtype = dtype,
                 .target = target, .disp = disp});
}

Request Window::rget(Issuer issuer, void* dst, size_t count, Datatype dtype, Rank target,
                     uint64_t disp) {
  return *issue(issuer, {.verb = Verb::get, .result = dst, .count = count, .dtype = dtype,
                         .target = target, .disp = disp,
                         .completion = Completion::local_request});
}

void Window::accumulate(Issuer issuer, const void* src, size_t count, Datatype dtype, ReduceOp op,
                        Rank target, uint64_t disp) {
  issue(issuer, {.verb = Verb::accumulate, .origin = src, .count = count, .dtype = dtype,
                 .target = target, .disp = disp, .op = op});
}

Request Window::raccumulate(Issuer issuer, const void* src, size_t count, Datatype dtype,
                            ReduceOp op, Rank target, uint64_t disp) {
  return *issue(issuer, {.verb = Verb::accumulate, .origin = src, .count = count, .dtype = dtype,
                         .target = target, .disp = disp, .op = op,
                         .completion = Completion::local_request});
}

Request Window::rraccumulate(Issuer issuer, const void* src, size_t count, Datatype dtype,
                             ReduceOp op, Rank target, uint64_t disp) {
  return *issue(issuer, {.verb = Verb::accumulate, .origin = src, .count = count, .dtype = dtype,
                         .target = target, .disp = disp, .op = op,
                         .completion = Completion::remote_request});
}

void Window::get_accumulate(Issuer issuer, const void* src, void* result, size_t count,
                            Datatype dtype, ReduceOp op, Rank target, uint64_t disp) {
  issue(issuer, {.verb = Verb::get_accumulate, .origin = src, .result = result, .count = count,
                 .dtype = dtype, .target = target, .disp = disp, .op = op});
}

void Window::fetch_and_op(Issuer issuer, const void* operand, void* result, Datatype dtype,
                          ReduceOp op, Rank target, uint64_t disp) {
  issue(issuer, {.verb = Verb::fetch_and_op, .origin = operand, .result = result, .count = 1,
                 .dtype = dtype, .target = target, .disp = disp, .op = op});
}

void Window::compare_and_swap(Issuer issuer, const void* compare, const void* desired,
                              void* result, Datatype dtype, Rank target, uint64_t disp) {
  issue(issuer, {.verb = Verb::compare_and_swap, .origin = desired, .result = result,
                 .compare = compare, .count = 1, .dtype = dtype, .target = target, .disp = disp});
}

}  // namespace rmax::rma
