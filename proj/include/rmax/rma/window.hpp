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

#ifndef RMAX_RMA_WINDOW_HPP
#define RMAX_RMA_WINDOW_HPP

#include <memory>
#include <optional>
#include <string>

#include "rmax/core/info.hpp"
#include "rmax/core/memhandle.hpp"
#include "rmax/core/types.hpp"
#include "rmax/simnet/transport.hpp"

namespace rmax::rma {

class World;
struct FamilyState;

enum class WindowKind { allocated, dynamic, memhandle, duplicate };
enum class LockMode { shared, exclusive };

enum class Verb { put, get, accumulate, get_accumulate, fetch_and_op, compare_and_swap };

/// When the returned request (if any) completes:
///   implicit       - no request; completion through flush/unlock
///   local_request  - origin buffer reuse (the Rput family)
///   remote_request - effect visible at the target (the Rrput family)
enum class Completion { implicit, local_request, remote_request };

/// One RMA operation. For gets, `result` receives count*size bytes. For the
/// accumulate family, `origin` holds the operand, `result` (when fetching)
/// the previous target contents, and `compare` the compare value for
/// compare_and_swap. Displacements are scaled by the window's displacement
/// unit except on dynamic windows, where `disp` is an absolute vaddr.
struct OpDescriptor {
  Verb verb = Verb::put;
  const void* origin = nullptr;
  void* result = nullptr;
  const void* compare = nullptr;
  size_t count = 1;
  Datatype dtype = Datatype::byte;
  Rank target = 0;
  uint64_t disp = 0;
  ReduceOp op = ReduceOp::replace;
  Completion completion = Completion::implicit;
};

/// Handle to one request-based operation.
class Request {
 public:
  Request() = default;

  /// Non-blocking; drives transport progress one step. Idempotent once true.
  bool test();

  /// Blocks (advances virtual time) until the operation completes; raises
  /// the transport fault of failed operations.
  void wait();

  bool valid() const { return ticket_ != nullptr; }

 private:
  friend class Window;
  Request(simnet::Transport* tx, simnet::TicketPtr t, Issuer issuer, bool remote)
      : tx_(tx), ticket_(std::move(t)), issuer_(issuer), remote_(remote) {}

  bool is_done() const;
  void surface_fault() const;

  simnet::Transport* tx_ = nullptr;
  simnet::TicketPtr ticket_;
  Issuer issuer_;
  bool remote_ = false;
};

/// A window over exposed memory. Duplicates and memory-handle windows share
/// the parent's endpoints, registrations and epoch state; only the info
/// configuration is per-handle.
class Window {
 public:
  ~Window();
  Window(const Window&) = delete;
  Window& operator=(const Window&) = delete;

  uint64_t id() const { return id_; }
  WindowKind kind() const { return kind_; }

  // Configuration.
  InfoMap get_info() const;
  void set_info(const InfoMap& info);

  /// True iff every operation named in `ops` applied to at most `max_count`
  /// elements of `dtype` would execute as a NIC-intrinsic atomic on this
  /// window's transport path.
  bool op_intrinsic(const std::string& ops, size_t max_count, Datatype dtype) const;

  // Passive-target epochs. Dynamic-window children created from memory
  // handles are locked through their parent window.
  void lock(Issuer issuer, Rank target, LockMode mode);
  void unlock(Issuer issuer, Rank target);
  void lock_all(Issuer issuer);
  void unlock_all(Issuer issuer);

  // Dynamic windows only.
  void attach(Rank rank, uint64_t base, uint64_t size);
  void detach(Rank rank, uint64_t base);

  /// Issues one operation; returns a request for the request-based
  /// completion modes.
  std::optional<Request> issue(Issuer issuer, const OpDescriptor& op);

  // Convenience wrappers over issue().
  void put(Issuer issuer, const void* src, size_t count, Datatype dtype, Rank target,
           uint64_t disp);
  Request rput(Issuer issuer, const void* src, size_t count, Datatype dtype, Rank target,
               uint64_t disp);
  Request rrput(Issuer issuer, const void* src, size_t count, Datatype dtype, Rank target,
                uint64_t disp);
  void get(Issuer issuer, void* dst, size_t count, Datatype dtype, Rank target, uint64_t disp);
  Request rget(Issuer issuer, void* dst, size_t count, Datatype dtype, Rank target,
               uint64_t disp);
  void accumulate(Issuer issuer, const void* src, size_t count, Datatype dtype, ReduceOp op,
                  Rank target, uint64_t disp);
  Request raccumulate(Issuer issuer, const void* src, size_t count, Datatype dtype, ReduceOp op,
                      Rank target, uint64_t disp);
  Request rraccumulate(Issuer issuer, const void* src, size_t count, Datatype dtype, ReduceOp op,
                       Rank target, uint64_t disp);
  void get_accumulate(Issuer issuer, const void* src, void* result, size_t count, Datatype dtype,
                      ReduceOp op, Rank target, uint64_t disp);
  void fetch_and_op(Issuer issuer, const void* operand, void* result, Datatype dtype, ReduceOp op,
                    Rank target, uint64_t disp);
  void compare_and_swap(Issuer issuer, const void* compare, const void* desired, void* result,
                        Datatype dtype, Rank target, uint64_t disp);

  // Completion. Scope comes from this window's info: process scope walks the
  // endpoints of every context of the calling rank, thread scope only the
  // calling context's operations.
  void flush(Issuer issuer, Rank target);
  void flush_all(Issuer issuer);
  void flush_local(Issuer issuer, Rank target);
  void flush_local_all(Issuer issuer);

 private:
  friend class World;
  Window(std::shared_ptr<FamilyState> fam, uint64_t id, WindowKind kind, InfoMap info);

  void ensure_usable() const;
  void flush_impl(Issuer issuer, std::optional<Rank> target, bool local_only);
  void flush_ticket_sets(Issuer issuer, std::optional<Rank> target, bool local_only,
                         bool for_unlock);
  uint64_t resolve_dynamic_rkey(Issuer issuer, Rank target, uint64_t vaddr, uint64_t len);

  std::shared_ptr<FamilyState> fam_;
  uint64_t id_ = 0;
  WindowKind kind_ = WindowKind::allocated;
  InfoMap info_;
  bool freed_ = false;

  // memhandle windows
  RegistrationRecord mh_record_{};
  Rank mh_target_ = -1;
  uint64_t mh_size_ = 0;
  int mh_disp_unit_ = 1;
};

using WindowPtr = std::shared_ptr<Window>;

}  // namespace rmax::rma

#endif  // RMAX_RMA_WINDOW_HPP
