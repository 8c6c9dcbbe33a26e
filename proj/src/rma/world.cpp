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

#include "rmax/rma/world.hpp"

#include "family.hpp"

namespace rmax::rma {

World::World(WorldConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.transport == TransportKind::sim) {
    simnet::SimConfig sc;
    sc.nranks = cfg_.nranks;
    sc.arena_size = cfg_.arena_size;
    sc.latency = cfg_.latency;
    sc.reorder_jitter_us = cfg_.reorder_jitter_us;
    sc.seed = cfg_.seed;
    sc.capabilities = cfg_.capabilities;
    sc.trace_enabled = cfg_.trace_enabled;
    auto sim = std::make_unique<simnet::SimNic>(sc);
    sim_ = sim.get();
    tx_ = std::move(sim);
  } else {
    simnet::LoopbackConfig lc;
    lc.nranks = cfg_.nranks;
    lc.arena_size = cfg_.arena_size;
    lc.capabilities = cfg_.capabilities;
    tx_ = std::make_unique<simnet::LoopbackTransport>(lc);
  }
  bump_.assign(size_t(cfg_.nranks), 0);
}

World::~World() = default;

uint64_t World::alloc(Rank rank, uint64_t size, uint64_t align) {
  if (rank < 0 || rank >= cfg_.nranks) raise(Errc::invalid_value, "rank outside group");
  if (align == 0) align = 1;
  uint64_t off = (bump_[size_t(rank)] + align - 1) / align * align;
  if (off + size > tx_->arena_size(rank))
    raise(Errc::out_of_arena, "arena exhausted on rank " + std::to_string(rank));
  bump_[size_t(rank)] = off + size;
  return off;
}

std::byte* World::mem(Rank rank, uint64_t vaddr) { return tx_->arena(rank) + vaddr; }

const std::byte* World::mem_view(Rank rank, uint64_t vaddr) const {
  return tx_->arena_view(rank) + vaddr;
}

namespace {

std::shared_ptr<FamilyState> make_family(simnet::Transport* tx, bool checked, uint64_t id,
                                         int nranks, WindowKind base_kind) {
  auto f = std::make_shared<FamilyState>();
  f->tx = tx;
  f->checked = checked;
  f->family_id = id;
  f->nranks = nranks;
  f->base_kind = base_kind;
  f->lock_state.resize(size_t(nranks));
  f->attached.resize(size_t(nranks));
  return f;
}

}  // namespace

WindowPtr World::win_allocate(uint64_t size_per_rank, int disp_unit, const InfoMap& info) {
  return win_allocate(std::vector<uint64_t>(size_t(cfg_.nranks), size_per_rank), disp_unit, info);
}

WindowPtr World::win_allocate(const std::vector<uint64_t>& sizes, int disp_unit,
                              const InfoMap& info) {
  if (sizes.size() != size_t(cfg_.nranks))
    raise(Errc::invalid_value, "need one size per rank in the group");
  if (disp_unit <= 0) raise(Errc::invalid_value, "displacement unit must be positive");
  uint64_t id = next_window_id_++;
  auto fam = make_family(tx_.get(), cfg_.checked, id, cfg_.nranks, WindowKind::allocated);
  fam->disp_unit = disp_unit;
  fam->sizes = sizes;
  fam->bases.resize(sizes.size(), 0);
  fam->allocated_regs.resize(sizes.size());
  // Memory is allocated and registered eagerly for every rank, so operations
  // take the direct RDMA path with no registration fetch.
  for (Rank r = 0; r < cfg_.nranks; ++r) {
    if (sizes[size_t(r)] == 0) continue;
    fam->bases[size_t(r)] = alloc(r, sizes[size_t(r)]);
    fam->allocated_regs[size_t(r)] =
        tx_->register_memory(r, fam->bases[size_t(r)], sizes[size_t(r)], id);
  }
  fam->live_windows = 1;
  return WindowPtr(new Window(fam, id, WindowKind::allocated, info));
}

WindowPtr World::win_create_dynamic(const InfoMap& info) {
  uint64_t id = next_window_id_++;
  auto fam = make_family(tx_.get(), cfg_.checked, id, cfg_.nranks, WindowKind::dynamic);
  fam->live_windows = 1;
  return WindowPtr(new Window(fam, id, WindowKind::dynamic, info));
}

WindowPtr World::win_dup_with_info(const WindowPtr& parent, const InfoMap& info) {
  if (!parent) raise(Errc::invalid_handle, "null parent window");
  parent->ensure_usable();
  if (parent->kind() == WindowKind::memhandle)
    raise(Errc::unsupported_operation, "memhandle windows cannot be duplicated");
  std::lock_guard<std::mutex> lk(parent->fam_->mu);
  uint64_t id = next_window_id_++;
  // Info keys from the parent carry over; provided keys override, and an
  // unsupported change is rejected by retaining the prior value.
  InfoMap merged = parent->info_.overridden_by(info);
  parent->fam_->live_windows++;
  return WindowPtr(new Window(parent->fam_, id, WindowKind::duplicate, merged));
}

MemHandleBlob World::memhandle_create(Rank caller, uint64_t base, uint64_t size,
                                      const InfoMap& info, const WindowPtr& parentwin) {
  (void)info;  // accepted for interface parity; no keys are consumed today
  if (!parentwin) raise(Errc::invalid_handle, "null parent window");
  parentwin->ensure_usable();
  if (parentwin->kind() != WindowKind::dynamic)
    raise(Errc::unsupported_operation, "memory handles require a dynamic parent window");
  RegistrationRecord rec =
      tx_->register_memory(caller, base, size, parentwin->fam_->family_id);
  return encode_memhandle(rec);
}

WindowPtr World::win_from_memhandle(Issuer caller, std::span<const std::byte> blob, uint64_t size,
                                    int disp_unit, const InfoMap& info, Rank target,
                                    const WindowPtr& parentwin) {
  if (!parentwin) raise(Errc::invalid_handle, "null parent window");
  parentwin->ensure_usable();
  if (parentwin->kind() != WindowKind::dynamic)
    raise(Errc::unsupported_operation, "memhandle windows require a dynamic parent window");
  if (disp_unit <= 0) raise(Errc::invalid_value, "displacement unit must be positive");
  RegistrationRecord rec = decode_memhandle(blob);
  if (rec.owner != target)
    raise(Errc::invalid_target, "handle owner does not match the requested target");
  if (rec.parent_window_id != parentwin->fam_->family_id)
    raise(Errc::invalid_handle, "handle was created through a different dynamic window");
  if (size > rec.size)
    raise(Errc::out_of_range, "window extent exceeds the exposed region");

  std::lock_guard<std::mutex> lk(parentwin->fam_->mu);
  tx_->charge(caller, tx_->params().t_win_create, simnet::TraceKind::win_create,
              simnet::OpKind::none, target, 0);
  uint64_t id = next_window_id_++;
  auto* w = new Window(parentwin->fam_, id, WindowKind::memhandle, info);
  w->mh_record_ = rec;
  w->mh_target_ = target;
  w->mh_size_ = size;
  w->mh_disp_unit_ = disp_unit;
  parentwin->fam_->live_windows++;
  return WindowPtr(w);
}

void World::memhandle_release(Rank caller, std::span<const std::byte> blob,
                              const WindowPtr& parentwin) {
  if (!parentwin) raise(Errc::invalid_handle, "null parent window");
  RegistrationRecord rec = decode_memhandle(blob);
  if (rec.owner != caller)
    raise(Errc::not_owner, "only the exposing rank may release a memory handle");
  tx_->deregister_memory(rec);  // double release reports already-released
}

void World::win_free(const WindowPtr& win) {
  if (!win) raise(Errc::invalid_handle, "null window");
  if (win->freed_) raise(Errc::invalid_handle, "window already freed");
  FamilyState& f = *win->fam_;
  std::lock_guard<std::mutex> lk(f.mu);

  for (const auto& [key, via] : f.held)
    if (via.second == win->id_)
      raise(Errc::open_epoch, "window has an open lock epoch");
  for (const auto& [origin, via] : f.lock_all_via)
    if (via == win->id_) raise(Errc::open_epoch, "window has an open lock_all epoch");
  if (auto it = f.request_tickets.find(win->id_); it != f.request_tickets.end()) {
    for (const auto& t : it->second)
      if (!t->done(false)) raise(Errc::outstanding_request, "requests still pending");
    f.request_tickets.erase(it);
  }

  win->freed_ = true;
  if (--f.live_windows > 0) return;

  // Last handle of the family: release the resources it owns. Registrations
  // made through memory handles belong to their blobs and stay live.
  for (auto& reg : f.allocated_regs) {
    if (reg && f.tx->registration_live(reg->owner, reg->rkey)) f.tx->deregister_memory(*reg);
    reg.reset();
  }
  for (auto& table : f.attached) {
    for (auto& [base, rec] : table)
      if (f.tx->registration_live(rec.owner, rec.rkey)) f.tx->deregister_memory(rec);
    table.clear();
  }
  f.rkey_cache.clear();
  f.outstanding.clear();
  f.endpoints_used.clear();
}

uint64_t World::allocated_base(const WindowPtr& win, Rank rank) const {
  if (!win) raise(Errc::invalid_handle, "null window");
  win->ensure_usable();
  if (win->fam_->base_kind != WindowKind::allocated)
    raise(Errc::unsupported_operation, "window does not own allocated segments");
  if (rank < 0 || rank >= cfg_.nranks) raise(Errc::invalid_value, "rank outside group");
  return win->fam_->bases[size_t(rank)];
}

}  // namespace rmax::rma
