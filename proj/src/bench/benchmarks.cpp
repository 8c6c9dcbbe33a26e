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

#include "rmax/bench/benchmarks.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rmax/rma/world.hpp"

namespace rmax::bench {
namespace {

Measurement finish(std::string scenario, std::string kind, uint64_t size, int contexts,
                   WinScope scope, bool ordered, const std::vector<double>& samples,
                   size_t events, size_t ops) {
  Measurement m;
  m.scenario = std::move(scenario);
  m.kind = std::move(kind);
  m.size_bytes = size;
  m.contexts = contexts;
  m.scope = scope;
  m.ordered = ordered;
  if (!samples.empty())
    m.mean_us = std::accumulate(samples.begin(), samples.end(), 0.0) / double(samples.size());
  m.p50_us = percentile(samples, 0.50);
  m.p99_us = percentile(samples, 0.99);
  m.events_per_op = ops == 0 ? 0 : double(events) / double(ops);
  return m;
}

void check_region(rma::World& w, Rank rank, uint64_t vaddr, uint64_t size, std::byte expect,
                  const char* what) {
  const std::byte* p = w.mem_view(rank, vaddr);
  for (uint64_t i = 0; i < size; ++i)
    if (p[i] != expect)
      raise(Errc::oracle_mismatch, std::string(what) + ": target memory diverges from the oracle");
}

rma::WorldConfig sim_config(uint64_t seed, const LatencyParams& lat, uint64_t arena) {
  rma::WorldConfig wc;
  wc.nranks = 2;
  wc.seed = seed;
  wc.latency = lat;
  wc.arena_size = std::max<uint64_t>(arena, 1 << 20);
  return wc;
}

}  // namespace

PutKind put_kind_from_string(const std::string& s) {
  if (s == "allocated") return PutKind::allocated;
  if (s == "dynamic_rkey") return PutKind::dynamic_rkey;
  if (s == "dynamic_am") return PutKind::dynamic_am;
  if (s == "memhandle") return PutKind::memhandle;
  if (s == "memhandle_with_create") return PutKind::memhandle_with_create;
  raise(Errc::invalid_scenario, "unknown window kind \"" + s + "\"");
}

const char* put_kind_name(PutKind k) {
  switch (k) {
    case PutKind::allocated: return "allocated";
    case PutKind::dynamic_rkey: return "dynamic_rkey";
    case PutKind::dynamic_am: return "dynamic_am";
    case PutKind::memhandle: return "memhandle";
    case PutKind::memhandle_with_create: return "memhandle_with_create";
  }
  return "unknown";
}

OrderingMode ordering_mode_from_string(const std::string& s) {
  if (s == "flush_between") return OrderingMode::flush_between;
  if (s == "ordered_no_flush") return OrderingMode::ordered_no_flush;
  if (s == "unordered_unlock_only") return OrderingMode::unordered_unlock_only;
  raise(Errc::invalid_scenario, "unknown ordering mode \"" + s + "\"");
}

const char* ordering_mode_name(OrderingMode m) {
  switch (m) {
    case OrderingMode::flush_between: return "flush_between";
    case OrderingMode::ordered_no_flush: return "ordered_no_flush";
    case OrderingMode::unordered_unlock_only: return "unordered_unlock_only";
  }
  return "unknown";
}

std::vector<Measurement> bench_put_latency(PutKind kind, const std::vector<uint64_t>& sizes,
                                           int iterations, int warmup, uint64_t seed,
                                           const LatencyParams& latency, bool checked) {
  if (iterations <= 0 || sizes.empty())
    raise(Errc::invalid_scenario, "need positive iterations and at least one size");
  std::vector<Measurement> out;
  for (uint64_t size : sizes) {
    rma::WorldConfig wcfg = sim_config(seed, latency, size * 4 + 65536);
    wcfg.checked = checked;
    rma::World w(wcfg);
    const Issuer origin{0, 0};
    const Rank target = 1;
    std::vector<std::byte> payload(size);

    rma::WindowPtr win;       // window ops go through (null for the create/free variant)
    rma::WindowPtr dynwin;    // parent for the dynamic/memhandle variants
    MemHandleBlob blob;
    uint64_t disp = 0;
    uint64_t target_vaddr = 0;

    switch (kind) {
      case PutKind::allocated: {
        win = w.win_allocate(size, 1, {});
        target_vaddr = w.allocated_base(win, target);
        win->lock_all(origin);
        break;
      }
      case PutKind::dynamic_rkey:
      case PutKind::dynamic_am: {
        InfoMap info;
        if (kind == PutKind::dynamic_am) info.set("mpi_dynamic_mode", "am");
        dynwin = w.win_create_dynamic(info);
        uint64_t base = w.alloc(target, size);
        dynwin->attach(target, base, size);
        dynwin->lock_all(origin);
        win = dynwin;
        disp = base;
        target_vaddr = base;
        break;
      }
      case PutKind::memhandle:
      case PutKind::memhandle_with_create: {
        dynwin = w.win_create_dynamic({});
        uint64_t base = w.alloc(target, size);
        blob = w.memhandle_create(target, base, size, {}, dynwin);
        dynwin->lock_all(origin);
        target_vaddr = base;
        if (kind == PutKind::memhandle)
          win = w.win_from_memhandle(origin, blob.view(), size, 1, {}, target, dynwin);
        break;
      }
    }

    auto iteration = [&](int i) {
      std::memset(payload.data(), i & 0xff, payload.size());
      if (kind == PutKind::memhandle_with_create) {
        rma::WindowPtr mh =
            w.win_from_memhandle(origin, blob.view(), size, 1, {}, target, dynwin);
        mh->put(origin, payload.data(), size, Datatype::byte, target, 0);
        mh->flush(origin, target);
        w.win_free(mh);
      } else {
        win->put(origin, payload.data(), size, Datatype::byte, target, disp);
        win->flush(origin, target);
      }
    };

    for (int i = 0; i < warmup; ++i) iteration(i);
    auto& tx = w.transport();
    size_t ev0 = tx.trace().events().size();
    std::vector<double> samples;
    samples.reserve(size_t(iterations));
    for (int i = 0; i < iterations; ++i) {
      double t0 = tx.context_clock(origin);
      iteration(warmup + i);
      samples.push_back(tx.context_clock(origin) - t0);
    }
    size_t ev1 = tx.trace().events().size();

    check_region(w, target, target_vaddr, size, std::byte((warmup + iterations - 1) & 0xff),
                 "bench_put");
    out.push_back(finish("bench_put", put_kind_name(kind), size, 1, WinScope::process, false,
                         samples, ev1 - ev0, size_t(iterations)));
  }
  return out;
}

Measurement bench_progress(int n_ops, double busy_time_s, ProgressMode mode, uint64_t seed,
                           const LatencyParams& latency, bool checked) {
  if (n_ops <= 0) raise(Errc::invalid_scenario, "need a positive op count");
  rma::WorldConfig wcfg = sim_config(seed, latency, 1 << 20);
  wcfg.checked = checked;
  rma::World w(wcfg);
  const Issuer origin{0, 0};
  const Rank target = 1;

  InfoMap info;
  if (mode == ProgressMode::am) info.set("mpi_dynamic_mode", "am");
  rma::WindowPtr win = w.win_create_dynamic(info);
  uint64_t base = w.alloc(target, 64);
  win->attach(target, base, 64);
  win->lock_all(origin);

  if (busy_time_s > 0) {
    w.transport().set_progress(target, false);
    w.sim()->set_progress_at(target, busy_time_s * 1e6, true);
  }

  auto& tx = w.transport();
  size_t ev0 = tx.trace().events().size();
  std::vector<double> samples;
  samples.reserve(size_t(n_ops));
  std::byte payload{0};
  for (int i = 0; i < n_ops; ++i) {
    payload = std::byte(i & 0xff);
    double t0 = tx.context_clock(origin);
    win->put(origin, &payload, 1, Datatype::byte, target, base);
    win->flush(origin, target);
    samples.push_back(tx.context_clock(origin) - t0);
  }
  size_t ev1 = tx.trace().events().size();

  check_region(w, target, base, 1, std::byte((n_ops - 1) & 0xff), "bench_progress");
  return finish("bench_progress", mode == ProgressMode::am ? "dynamic_am" : "dynamic_rkey", 1, 1,
                WinScope::process, false, samples, ev1 - ev0, size_t(n_ops));
}

std::vector<Measurement> bench_mt_flush(int contexts, const std::vector<uint64_t>& sizes,
                                        WinScope scope, int iterations, int warmup, uint64_t seed,
                                        const LatencyParams& latency) {
  if (contexts < 1 || iterations <= 0 || sizes.empty())
    raise(Errc::invalid_scenario, "need contexts >= 1, positive iterations and sizes");
  std::vector<Measurement> out;
  for (uint64_t size : sizes) {
    rma::World w(sim_config(seed, latency, size * uint64_t(contexts + 2) + 65536));
    const Issuer main_ctx{0, 0};
    const Rank target = 1;
    InfoMap info{{"mpi_win_scope", scope == WinScope::thread ? "thread" : "process"}};
    rma::WindowPtr win = w.win_allocate(size * uint64_t(contexts + 1), 1, info);
    win->lock_all(main_ctx);

    // The main context touches the target once so its endpoint exists and
    // process-scope flushes have to walk it, as in the reference design.
    std::vector<std::byte> payload(size);
    win->put(main_ctx, payload.data(), size, Datatype::byte, target, 0);
    win->flush(main_ctx, target);

    auto& tx = w.transport();
    std::vector<double> samples;
    samples.reserve(size_t(iterations) * size_t(contexts));
    size_t ev0 = 0;
    for (int it = 0; it < warmup + iterations; ++it) {
      if (it == warmup) ev0 = tx.trace().events().size();
      std::memset(payload.data(), it & 0xff, payload.size());
      for (int k = 1; k <= contexts; ++k) {
        Issuer ctx{0, k};
        // Contexts run concurrently in virtual time; an idle context's clock
        // tracks the world, so each iteration measures only its own work.
        tx.advance_clock(ctx, w.sim()->now());
        double t0 = tx.context_clock(ctx);
        win->put(ctx, payload.data(), size, Datatype::byte, target, uint64_t(k) * size);
        win->flush(ctx, target);
        if (it >= warmup) samples.push_back(tx.context_clock(ctx) - t0);
      }
    }
    size_t ev1 = tx.trace().events().size();

    uint64_t base = w.allocated_base(win, target);
    std::byte last{std::byte((warmup + iterations - 1) & 0xff)};
    for (int k = 1; k <= contexts; ++k)
      check_region(w, target, base + uint64_t(k) * size, size, last, "bench_mt_flush");
    out.push_back(finish("bench_mt_flush", scope == WinScope::thread ? "thread" : "process", size,
                         contexts, scope, false, samples, ev1 - ev0,
                         size_t(iterations) * size_t(contexts)));
  }
  return out;
}

Measurement bench_ordering(int n_chain, OrderingMode mode, int iterations, int warmup,
                           uint64_t seed, const LatencyParams& latency, bool inject_fence_bug,
                           bool* reorder_observed) {
  if (n_chain < 2) raise(Errc::invalid_scenario, "chains need at least two operations");
  if (iterations <= 0) raise(Errc::invalid_scenario, "need positive iterations");
  rma::World w(sim_config(seed, latency, 1 << 20));
  const Issuer origin{0, 0};
  const Rank target = 1;

  const bool ordered_key = mode == OrderingMode::ordered_no_flush && !inject_fence_bug;
  InfoMap info{{"mpi_win_order", ordered_key ? "true" : "false"},
               {"mpi_assert_accumulate_intrinsic", "true"}};
  rma::WindowPtr win = w.win_allocate(64, 1, info);
  win->lock_all(origin);
  uint64_t base = w.allocated_base(win, target);

  auto& tx = w.transport();
  const int n_puts = n_chain - 1;
  std::vector<int64_t> vals(static_cast<size_t>(n_puts), 0);
  std::vector<double> samples;
  samples.reserve(size_t(iterations));
  int64_t flag_expect = 0;
  bool observed = false;
  size_t ev0 = 0;

  for (int it = 0; it < warmup + iterations; ++it) {
    if (it == warmup) ev0 = tx.trace().events().size();
    for (int k = 0; k < n_puts; ++k) vals[size_t(k)] = int64_t(it) * 64 + k + 1;
    double t0 = tx.context_clock(origin);
    for (int k = 0; k < n_puts; ++k) {
      win->put(origin, &vals[size_t(k)], 1, Datatype::int64, target, 0);
      if (mode == OrderingMode::flush_between) win->flush(origin, target);
    }
    int64_t one = 1;
    win->accumulate(origin, &one, 1, Datatype::int64, ReduceOp::sum, target, 8);
    win->flush(origin, target);
    if (it >= warmup) samples.push_back(tx.context_clock(origin) - t0);

    flag_expect++;
    int64_t data = w.read<int64_t>(target, base);
    int64_t flag = w.read<int64_t>(target, base + 8);
    if (flag != flag_expect)
      raise(Errc::oracle_mismatch, "bench_ordering: completion signal diverges");
    if (mode == OrderingMode::unordered_unlock_only) {
      bool member = false;
      for (int64_t v : vals) member |= (v == data);
      if (!member) raise(Errc::oracle_mismatch, "bench_ordering: foreign value in target memory");
      observed |= data != vals.back();
    } else if (data != vals.back()) {
      raise(Errc::oracle_mismatch, "bench_ordering: chain completed out of order");
    }
  }
  size_t ev1 = tx.trace().events().size();

  if (reorder_observed) *reorder_observed = observed;
  return finish("bench_ordering", ordering_mode_name(mode), 8, 1, WinScope::process, ordered_key,
                samples, ev1 - ev0, size_t(iterations) * size_t(n_chain));
}

void emit_csv(const std::vector<Measurement>& measurements, std::ostream& out) {
  out << "scenario,kind,size_bytes,contexts,scope,ordered,mean_us,p50_us,p99_us,events_per_op\n";
  char buf[160];
  for (const Measurement& m : measurements) {
    std::snprintf(buf, sizeof buf, "%llu,%d,%s,%s,%.6f,%.6f,%.6f,%.3f",
                  static_cast<unsigned long long>(m.size_bytes), m.contexts,
                  m.scope == WinScope::thread ? "thread" : "process",
                  m.ordered ? "true" : "false", m.mean_us, m.p50_us, m.p99_us, m.events_per_op);
    out << m.scenario << ',' << m.kind << ',' << buf << '\n';
  }
}

void emit_csv_file(const std::vector<Measurement>& measurements, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot open " + path + " for writing");
  emit_csv(measurements, out);
}

std::string csv_string(const std::vector<Measurement>& measurements) {
  std::ostringstream os;
  emit_csv(measurements, os);
  return os.str();
}

}  // namespace rmax::bench
