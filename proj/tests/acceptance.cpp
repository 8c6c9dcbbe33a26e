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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the binary exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rmax/bench/benchmarks.hpp"
#include "rmax/rma/world.hpp"

using namespace rmax;
using namespace rmax::bench;
using namespace rmax::rma;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

double wall_seconds(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double mean_of(PutKind kind, uint64_t seed = 42) {
  return bench_put_latency(kind, {8}, 10000, 100, seed, LatencyParams{})[0].mean_us;
}

// --- criterion 1 -----------------------------------------------------------

void dynamic_window_penalty() {
  double allocated = 0, dyn_rkey = 0, dyn_am = 0;
  double secs = wall_seconds([&] {
    allocated = mean_of(PutKind::allocated);
    dyn_rkey = mean_of(PutKind::dynamic_rkey);
    dyn_am = mean_of(PutKind::dynamic_am);
  });
  double r1 = dyn_rkey / allocated, r2 = dyn_am / allocated;
  require(r1 >= 1.5, "dynamic_rkey/allocated ratio " + std::to_string(r1) + " < 1.5");
  require(r2 >= 1.5, "dynamic_am/allocated ratio " + std::to_string(r2) + " < 1.5");
  require(secs < 10.0, "runtime " + std::to_string(secs) + "s exceeds 10s");
}

// --- criterion 2 -----------------------------------------------------------

using EventShape = std::vector<std::pair<simnet::TraceKind, simnet::OpKind>>;

EventShape one_put_shape(bool memhandle) {
  WorldConfig wc;
  wc.nranks = 2;
  wc.seed = 5;
  World w(wc);
  const Issuer origin{0, 0};
  WindowPtr win, dyn;
  MemHandleBlob blob;
  if (memhandle) {
    dyn = w.win_create_dynamic({});
    uint64_t base = w.alloc(1, 64);
    blob = w.memhandle_create(1, base, 64, {}, dyn);
    dyn->lock_all(origin);
    win = w.win_from_memhandle(origin, blob.view(), 64, 1, {}, 1, dyn);
  } else {
    win = w.win_allocate(64, 1, {});
    win->lock_all(origin);
  }
  int64_t v = 42;
  w.transport().trace().clear();
  win->put(origin, &v, 1, Datatype::int64, 1, 0);
  win->flush(origin, 1);
  EventShape shape;
  for (const auto& ev : w.transport().trace().events()) shape.emplace_back(ev.kind, ev.op);
  return shape;
}

void memhandle_parity() {
  double allocated = mean_of(PutKind::allocated);
  double memhandle = mean_of(PutKind::memhandle);
  double with_create = mean_of(PutKind::memhandle_with_create);
  require(std::abs(memhandle - allocated) / allocated < 0.05,
          "memhandle put diverges from allocated by >= 5%");

  EventShape alloc_shape = one_put_shape(false), mh_shape = one_put_shape(true);
  require(alloc_shape == mh_shape, "per-op transport event shapes differ");
  for (const auto& [kind, op] : mh_shape)
    require(kind != simnet::TraceKind::rkey_fetch && op != simnet::OpKind::rkey_fetch,
            "memhandle trace contains an rkey fetch");

  double delta = with_create - memhandle;
  require(std::abs(delta - 1.0) <= 0.05,
          "create/destroy overhead " + std::to_string(delta) + " not ~1.0us");
}

// --- criterion 3 -----------------------------------------------------------

void progress_gating() {
  double am = 0, rdma = 0;
  double secs = wall_seconds([&] {
    am = bench_progress(100000, 3.0, ProgressMode::am, 42, LatencyParams{}).mean_us;
    rdma = bench_progress(100000, 3.0, ProgressMode::rdma, 42, LatencyParams{}).mean_us;
  });
  require(am >= 30.0, "am-mode mean " + std::to_string(am) + "us below 30us");
  require(rdma < 30.0, "rdma-mode mean " + std::to_string(rdma) + "us not below 30us");
  require(secs < 60.0, "runtime " + std::to_string(secs) + "s exceeds 60s");
}

// --- criterion 4 -----------------------------------------------------------

void thread_scope_flush() {
  double thread32 =
      bench_mt_flush(32, {1}, WinScope::thread, 300, 30, 42, LatencyParams{})[0].mean_us;
  double process32 =
      bench_mt_flush(32, {1}, WinScope::process, 300, 30, 42, LatencyParams{})[0].mean_us;
  require(thread32 <= process32 / 2,
          "thread-scope mean " + std::to_string(thread32) + " not <= half of process-scope " +
              std::to_string(process32));

  double lo = 1e300, hi = 0;
  for (int n : {1, 2, 4, 8, 16, 32}) {
    double m = bench_mt_flush(n, {1}, WinScope::thread, 200, 20, 42, LatencyParams{})[0].mean_us;
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  require(hi / lo <= 1.10, "thread-scope latency varies " + std::to_string(hi / lo) +
                               "x across 1..32 contexts (allowed 1.10x)");
}

// --- criterion 5 -----------------------------------------------------------

void ordering() {
  LatencyParams lat;
  double flushy = bench_ordering(5, OrderingMode::flush_between, 500, 50, 42, lat).mean_us;
  double ordered = bench_ordering(5, OrderingMode::ordered_no_flush, 500, 50, 42, lat).mean_us;
  double unordered =
      bench_ordering(5, OrderingMode::unordered_unlock_only, 500, 50, 42, lat).mean_us;
  require(unordered < ordered && ordered < flushy,
          "means not strictly ordered: " + std::to_string(unordered) + " / " +
              std::to_string(ordered) + " / " + std::to_string(flushy));

  bool any_reorder = false;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    // The oracle inside bench_ordering throws on any violation.
    bench_ordering(5, OrderingMode::flush_between, 5, 0, seed, lat);
    bench_ordering(5, OrderingMode::ordered_no_flush, 5, 0, seed, lat);
    bool reordered = false;
    bench_ordering(5, OrderingMode::unordered_unlock_only, 5, 0, seed, lat, false, &reordered);
    any_reorder |= reordered;
  }
  require(any_reorder, "no seed exhibited unordered completion");
}

// --- criterion 6 -----------------------------------------------------------

void atomicity() {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    WorldConfig wc;
    wc.nranks = 2;
    wc.seed = seed;
    wc.trace_enabled = false;
    World w(wc);
    InfoMap info{{"mpi_assert_accumulate_intrinsic", "true"}};
    auto win = w.win_allocate(64, 1, info);
    win->lock_all({0, 0});
    int64_t one = 1, sink = 0;
    for (int i = 0; i < 1000; ++i)
      for (int c = 0; c < 4; ++c)
        win->fetch_and_op({0, c}, &one, &sink, Datatype::int64, ReduceOp::sum, 1, 0);
    win->flush_all({0, 0});
    for (int c = 1; c < 4; ++c) win->flush_all({0, c});
    require(w.read<int64_t>(1, w.allocated_base(win, 1)) == 4000,
            "SimNIC fetch_and_op total != 4000 at seed " + std::to_string(seed));
  }

  for (int round = 0; round < 200; ++round) {
    WorldConfig wc;
    wc.nranks = 2;
    wc.transport = TransportKind::loopback;
    World w(wc);
    InfoMap info{{"mpi_assert_accumulate_intrinsic", "true"}};
    auto win = w.win_allocate(64, 1, info);
    win->lock_all({0, 0});
    std::vector<std::thread> threads;
    for (int c = 1; c <= 4; ++c) {
      threads.emplace_back([&, c] {
        int64_t one = 1, sink = 0;
        for (int i = 0; i < 1000; ++i)
          win->fetch_and_op({0, c}, &one, &sink, Datatype::int64, ReduceOp::sum, 1, 0);
      });
    }
    for (auto& t : threads) t.join();
    win->flush_all({0, 0});
    require(w.read<int64_t>(1, w.allocated_base(win, 1)) == 4000,
            "loopback fetch_and_op total != 4000 in round " + std::to_string(round));
  }
}

// --- criterion 7 -----------------------------------------------------------

void stale_rkey_property_run(bool checked) {
  WorldConfig wc;
  wc.nranks = 2;
  wc.seed = 1717;
  wc.checked = checked;
  wc.trace_enabled = false;
  World w(wc);
  auto win = w.win_create_dynamic({});
  win->lock_all({0, 0});

  constexpr int kRegions = 8;
  constexpr uint64_t kSize = 64;
  uint64_t bases[kRegions];
  for (int i = 0; i < kRegions; ++i) bases[i] = w.alloc(1, kSize, kSize);

  // Shadow model of the runtime's visible behavior.
  std::vector<uint8_t> shadow(kRegions * kSize, 0);
  bool attached[kRegions] = {};
  int attach_epoch[kRegions] = {};
  int cached_epoch[kRegions];
  std::fill(std::begin(cached_epoch), std::end(cached_epoch), -1);
  struct Pending {
    int region;
    uint64_t off;
    uint8_t val;
    bool fault;
    int epoch;  // registration epoch the op's rkey belongs to
  };
  std::vector<Pending> pending;

  std::mt19937_64 rng(4242);
  int puts = 0, stale_events = 0;

  auto do_flush = [&] {
    bool expect_fault = false;
    for (const auto& p : pending) expect_fault |= p.fault;
    bool faulted = false;
    try {
      win->flush({0, 0}, 1);
    } catch (const Error& e) {
      require(e.code() == Errc::stale_rkey, "unexpected flush error");
      faulted = true;
    }
    require(faulted == expect_fault, "flush fault prediction diverged");
    for (const auto& p : pending) {
      if (p.fault) {
        // The runtime evicts by the faulted rkey; a cache refreshed since
        // the op was issued survives.
        if (cached_epoch[p.region] == p.epoch) cached_epoch[p.region] = -1;
        ++stale_events;
      } else {
        shadow[size_t(p.region) * kSize + p.off] = p.val;
      }
    }
    pending.clear();
  };

  while (puts < 10500) {
    int action = int(rng() % 10);
    int r = int(rng() % kRegions);
    if (action < 2) {
      if (!attached[r]) {
        win->attach(1, bases[r], kSize);
        attached[r] = true;
        attach_epoch[r]++;
      }
    } else if (action < 4) {
      if (attached[r]) {
        win->detach(1, bases[r]);
        attached[r] = false;
        for (auto& p : pending)
          if (p.region == r) p.fault = true;  // dies before delivery
      }
    } else if (action < 9) {
      // Unfenced puts may be delivered in either order, so keep in-flight
      // writes byte-disjoint; this property is about lifetime, not ordering.
      uint64_t off = rng() % kSize;
      for (bool busy = true; busy;) {
        busy = false;
        for (const auto& p : pending)
          if (p.region == r && p.off == off) {
            off = (off + 1) % kSize;
            busy = true;
            break;
          }
      }
      uint8_t val = uint8_t(rng());
      ++puts;
      std::byte b{val};
      bool cache_ok = attached[r] && cached_epoch[r] == attach_epoch[r];
      if (checked) {
        if (cached_epoch[r] != -1 && !cache_ok) {
          try {
            win->put({0, 0}, &b, 1, Datatype::byte, 1, bases[r] + off);
            require(false, "expected a stale-rkey error at issue");
          } catch (const Error& e) {
            require(e.code() == Errc::stale_rkey, "wrong issue-time error");
          }
          cached_epoch[r] = -1;
          ++stale_events;
          continue;
        }
        if (cached_epoch[r] == -1 && !attached[r]) {
          try {
            win->put({0, 0}, &b, 1, Datatype::byte, 1, bases[r] + off);
            require(false, "expected target resolution to fail");
          } catch (const Error& e) {
            require(e.code() == Errc::target_unresolved, "wrong resolution error");
          }
          continue;
        }
        win->put({0, 0}, &b, 1, Datatype::byte, 1, bases[r] + off);
        cached_epoch[r] = attach_epoch[r];
        pending.push_back({r, off, val, false, cached_epoch[r]});
      } else {
        if (cached_epoch[r] == -1) {
          if (!attached[r]) {
            try {
              win->put({0, 0}, &b, 1, Datatype::byte, 1, bases[r] + off);
              require(false, "expected target resolution to fail");
            } catch (const Error& e) {
              require(e.code() == Errc::target_unresolved, "wrong resolution error");
            }
            continue;
          }
          win->put({0, 0}, &b, 1, Datatype::byte, 1, bases[r] + off);
          cached_epoch[r] = attach_epoch[r];
          pending.push_back({r, off, val, false, cached_epoch[r]});
        } else {
          win->put({0, 0}, &b, 1, Datatype::byte, 1, bases[r] + off);
          pending.push_back({r, off, val, !cache_ok, cached_epoch[r]});
        }
      }
    } else {
      do_flush();
    }
  }
  do_flush();

  for (int r = 0; r < kRegions; ++r)
    for (uint64_t off = 0; off < kSize; ++off)
      require(uint8_t(w.mem_view(1, bases[r] + off)[0]) == shadow[size_t(r) * kSize + off],
              "arena diverges from the shadow oracle");
  require(stale_events > 50, "trace exercised too few stale uses");
}

void stale_rkey_property() {
  stale_rkey_property_run(true);
  stale_rkey_property_run(false);
}

// --- criterion 8 -----------------------------------------------------------

void remote_completing_requests() {
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    WorldConfig wc;
    wc.nranks = 2;
    wc.seed = seed;
    wc.trace_enabled = false;
    World w(wc);
    auto win = w.win_allocate(64, 1, {});
    win->lock_all({0, 0});
    int64_t v = int64_t(seed) * 2654435761 + 1;
    Request req = win->rrput({0, 0}, &v, 1, Datatype::int64, 1, 0);
    req.wait();
    require(w.read<int64_t>(1, w.allocated_base(win, 1)) == v,
            "rrput completion left stale target data at seed " + std::to_string(seed));
  }

  bool stale_found = false;
  for (uint64_t seed = 0; seed < 1000 && !stale_found; ++seed) {
    WorldConfig wc;
    wc.nranks = 2;
    wc.seed = seed;
    wc.trace_enabled = false;
    World w(wc);
    auto win = w.win_allocate(64, 1, {});
    win->lock_all({0, 0});
    int64_t v = 0x5EED;
    Request req = win->rput({0, 0}, &v, 1, Datatype::int64, 1, 0);
    req.wait();  // local completion only
    stale_found = w.read<int64_t>(1, w.allocated_base(win, 1)) != v;
  }
  require(stale_found, "no seed showed stale data after a local-only rput completion");
}

// --- criterion 9 -----------------------------------------------------------

void determinism() {
  auto run_all = [] {
    std::vector<Measurement> ms =
        bench_put_latency(PutKind::memhandle, {8, 64}, 500, 50, 42, LatencyParams{});
    auto mt = bench_mt_flush(4, {1}, WinScope::thread, 200, 20, 42, LatencyParams{});
    ms.insert(ms.end(), mt.begin(), mt.end());
    ms.push_back(bench_ordering(5, OrderingMode::ordered_no_flush, 200, 20, 42, LatencyParams{}));
    ms.push_back(bench_progress(2000, 0.01, ProgressMode::am, 42, LatencyParams{}));
    return csv_string(ms);
  };
  require(run_all() == run_all(), "re-run with an identical seed changed the CSV bytes");
}

// --- criterion 10 ----------------------------------------------------------

void blob_format() {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 10000; ++i) {
    RegistrationRecord r{Rank(rng() % 65536), rng(), rng(), rng(), rng()};
    MemHandleBlob b = encode_memhandle(r);
    require(b.length == 44 && decode_memhandle(b) == r, "round-trip failure");
  }
  RegistrationRecord fixed{3, 0x1000, 4096, 7, 2};
  MemHandleBlob b = encode_memhandle(fixed);
  const uint8_t expect[44] = {
      0x4D, 0x48, 0x44, 0x4C, 0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
      0x03, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x00, 0x00,
      0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
      0x00, 0x00, 0x07, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x02,
  };
  require(b.length == 44, "fixed vector length mismatch");
  for (size_t i = 0; i < 44; ++i)
    require(uint8_t(b.bytes[i]) == expect[i], "fixed vector byte " + std::to_string(i));
}

struct Criterion {
  int id;
  const char* name;
  std::function<void()> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "dynamic-window penalty: 8B put+flush ratios >= 1.5x", dynamic_window_penalty},
      {2, "memhandle parity: <5% of allocated, no rkey fetches, ~1us create cost",
       memhandle_parity},
      {3, "progress gating: 100k single-byte ops, 3s busy target", progress_gating},
      {4, "thread-scope flush: <=1/2 of process scope at 32 contexts, flat scaling",
       thread_scope_flush},
      {5, "ordering: ordered mean strictly between, 1000-seed chain oracle", ordering},
      {6, "atomicity: 4x1000 fetch_and_op == 4000 on SimNIC and loopback", atomicity},
      {7, "stale-rkey safety: 10k-op attach/detach traces vs shadow oracle",
       stale_rkey_property},
      {8, "remote-completing requests: rrput visible, rput needs a flush",
       remote_completing_requests},
      {9, "determinism: identical seeds give byte-identical CSV", determinism},
      {10, "blob format: 10k round-trips and the fixed 44-byte vector", blob_format},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    try {
      double secs = wall_seconds(c.fn);
      std::printf("PASS  %2d  %s  (%.2fs)\n", c.id, c.name, secs);
    } catch (const std::exception& e) {
      std::printf("FAIL  %2d  %s: %s\n", c.id, c.name, e.what());
      ++failed;
    }
    std::fflush(stdout);
  }
  if (failed != 0) {
    std::printf("%d of %zu acceptance criteria failed\n", failed, criteria.size());
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return 0;
}
