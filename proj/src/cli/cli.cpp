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

#include "rmax/cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ostream>

#include "rmax/bench/benchmarks.hpp"
#include "rmax/rma/world.hpp"

namespace rmax::cli {
namespace {

uint64_t default_seed() {
  if (const char* env = std::getenv("RMALIB_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 42;
}

std::vector<uint64_t> parse_sizes(const std::string& s) {
  std::vector<uint64_t> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string tok = comma == std::string::npos ? s.substr(pos) : s.substr(pos, comma - pos);
    if (!tok.empty()) {
      uint64_t mult = 1;
      char suffix = tok.back();
      if (suffix == 'k' || suffix == 'K') mult = 1024;
      if (suffix == 'm' || suffix == 'M') mult = 1024 * 1024;
      if (mult != 1) tok.pop_back();
      try {
        out.push_back(std::stoull(tok) * mult);
      } catch (const std::exception&) {
        raise(Errc::invalid_scenario, "bad size token \"" + tok + "\"");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) raise(Errc::invalid_scenario, "empty size list");
  return out;
}

struct CommonOpts {
  uint64_t seed = default_seed();
  std::string params_file;
  std::string output = "-";

  LatencyParams latency() const {
    return params_file.empty() ? LatencyParams{} : LatencyParams::from_file(params_file);
  }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--seed", c.seed, "simulator seed (env RMALIB_SEED supplies the default)")
      ->capture_default_str();
  cmd->add_option("--params", c.params_file, "latency parameters, flat key=value file");
  cmd->add_option("-o,--output", c.output, "CSV output path, '-' for stdout")
      ->capture_default_str();
}

void write_csv(const std::vector<bench::Measurement>& ms, const CommonOpts& c,
               std::ostream& out) {
  if (c.output.empty() || c.output == "-")
    bench::emit_csv(ms, out);
  else
    bench::emit_csv_file(ms, c.output);
}

std::string format_us(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f us", v);
  return buf;
}

// The explicit-registration flow: expose, exchange the handle, build a
// single-target window, communicate, signal, release.
void demo_memhandle(std::ostream& out, uint64_t seed, const LatencyParams& lat) {
  rma::WorldConfig wc;
  wc.nranks = 2;
  wc.seed = seed;
  wc.latency = lat;
  rma::World w(wc);
  const Rank A = 0;
  const Issuer b{1, 0};

  out << "demo-memhandle: zero-overhead dynamic exposure via explicit handles\n";
  rma::WindowPtr dyn = w.win_create_dynamic({});
  out << "[A,B] create dynamic window (collective rendezvous)\n";

  uint64_t base = w.alloc(A, 256);
  MemHandleBlob blob = w.memhandle_create(A, base, 256, {}, dyn);
  char line[96];
  std::snprintf(line, sizeof line,
                "[A]   memhandle_create(base=0x%llx, size=256) -> %zu-byte handle\n",
                static_cast<unsigned long long>(base), blob.length);
  out << line;
  out << "[A>B] handle travels out of band\n";

  dyn->lock_all(b);
  out << "[B]   lock_all on the parent dynamic window\n";
  rma::WindowPtr win = w.win_from_memhandle(b, blob.view(), 256, 1, {}, A, dyn);
  out << "[B]   win_from_memhandle(target=A), sole target A\n";

  std::vector<std::byte> data(128, std::byte{0xAB});
  win->put(b, data.data(), data.size(), Datatype::byte, A, 0);
  out << "[B]   put 128 bytes (direct RDMA, no registration fetch)\n";
  int64_t one = 1;
  win->accumulate(b, &one, 1, Datatype::int64, ReduceOp::sum, A, 128);
  out << "[B]   accumulate completion signal (+1)\n";
  win->flush(b, A);
  out << "[B]   flush -> remote completion at " << format_us(w.transport().context_clock(b))
      << " virtual\n";

  std::vector<std::byte> check(128);
  win->get(b, check.data(), check.size(), Datatype::byte, A, 0);
  win->flush(b, A);
  if (check != data) raise(Errc::oracle_mismatch, "demo-memhandle: read-back diverges");
  out << "[B]   get verifies the payload\n";

  w.win_free(win);
  out << "[B]   win_free(memhandle window)\n";
  dyn->unlock_all(b);

  if (w.read<int64_t>(A, base + 128) != 1)
    raise(Errc::oracle_mismatch, "demo-memhandle: completion signal missing");
  out << "[A]   observes signal flag == 1 in its own memory\n";
  w.memhandle_release(A, blob.view(), dyn);
  out << "[A]   memhandle_release -> exposure ended\n";
  w.win_free(dyn);
  out << "[A,B] win_free(dynamic window)\n";
  out << "done, virtual time " << format_us(w.transport().context_clock(b)) << "\n";
}

// Put-then-signal with and without an intermediate flush: the ordered window
// chains the two operations through NIC fences instead.
void demo_chain(std::ostream& out, uint64_t seed, const LatencyParams& lat) {
  out << "demo-chain: signaling a put with an atomic increment\n";
  const Rank target = 1;
  const Issuer origin{0, 0};
  int64_t payload = 0x1122334455667788;

  auto run_variant = [&](bool ordered) -> double {
    rma::WorldConfig wc;
    wc.nranks = 2;
    wc.seed = seed;
    wc.latency = lat;
    rma::World w(wc);
    InfoMap info{{"mpi_assert_accumulate_intrinsic", "true"}};
    if (ordered) info.set("mpi_win_order", "true");
    rma::WindowPtr win = w.win_allocate(64, 1, info);
    if (!win->op_intrinsic("sum", 1, Datatype::int64))
      raise(Errc::oracle_mismatch, "demo-chain: sum/int64 unexpectedly not intrinsic");
    win->lock_all(origin);

    auto& tx = w.transport();
    double t0 = tx.context_clock(origin);
    int64_t one = 1;
    if (ordered) {
      // Ordered sequence: no flush between the data put and the signal.
      win->put(origin, &payload, 1, Datatype::int64, target, 0);
      rma::Request req =
          win->rraccumulate(origin, &one, 1, Datatype::int64, ReduceOp::sum, target, 8);
      while (!req.test()) { /* do_useful_work() */
      }
    } else {
      rma::Request put_req = win->rput(origin, &payload, 1, Datatype::int64, target, 0);
      while (!put_req.test()) { /* do_useful_work() */
      }
      win->flush(origin, target);  // remote completion before the signal
      rma::Request req =
          win->rraccumulate(origin, &one, 1, Datatype::int64, ReduceOp::sum, target, 8);
      while (!req.test()) { /* do_useful_work() */
      }
    }
    double elapsed = tx.context_clock(origin) - t0;

    uint64_t base = w.allocated_base(win, target);
    if (w.read<int64_t>(target, base) != payload || w.read<int64_t>(target, base + 8) != 1)
      raise(Errc::oracle_mismatch, "demo-chain: target state diverges");
    win->unlock_all(origin);
    w.win_free(win);
    return elapsed;
  };

  double with_flush = run_variant(false);
  out << "flush-based:   data put, flush, signal accumulate -> " << format_us(with_flush) << "\n";
  double chained = run_variant(true);
  out << "ordered chain: data put and signal chained, no intermediate flush -> "
      << format_us(chained) << "\n";
  out << "target state verified in both variants\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"one-sided RMA micro-benchmarks over a simulated RDMA NIC"};
  app.require_subcommand(1);

  CommonOpts put_c, prog_c, mt_c, ord_c, dm_c, dc_c;

  auto* put = app.add_subcommand("bench-put", "put+flush latency across window kinds");
  std::string put_kind = "allocated";
  std::string put_sizes = "8";
  int put_iters = 10000, put_warmup = 100;
  std::string put_scenario;
  bool put_unchecked = false;
  put->add_option("--kind", put_kind, "allocated|dynamic_rkey|dynamic_am|memhandle|memhandle_with_create")
      ->capture_default_str();
  put->add_option("--sizes", put_sizes, "comma list of message sizes, k/M suffixes")
      ->capture_default_str();
  put->add_option("--iters", put_iters, "measured iterations")->capture_default_str();
  put->add_option("--warmup", put_warmup, "warmup iterations excluded from stats")
      ->capture_default_str();
  put->add_option("--scenario", put_scenario, "scenario file (flat key=value); flags override");
  put->add_flag("--unchecked", put_unchecked,
                "run the hazardous unchecked mode (blind registration caches)");
  add_common(put, put_c);

  auto* prog = app.add_subcommand("bench-progress", "target progress dependence of dynamic paths");
  int prog_ops = 100000;
  double prog_busy = 3.0;
  std::string prog_mode = "am";
  bool prog_unchecked = false;
  prog->add_option("--ops", prog_ops, "put+flush pairs to issue")->capture_default_str();
  prog->add_option("--busy-s", prog_busy, "virtual seconds the target stays outside the runtime")
      ->capture_default_str();
  prog->add_option("--mode", prog_mode, "rdma|am")->capture_default_str();
  prog->add_flag("--unchecked", prog_unchecked,
                 "run the hazardous unchecked mode (blind registration caches)");
  add_common(prog, prog_c);

  auto* mt = app.add_subcommand("bench-mt-flush", "multi-context put+flush with scoped flushes");
  int mt_contexts = 32;
  std::string mt_sizes = "1";
  std::string mt_scope = "process";
  int mt_iters = 2000, mt_warmup = 100;
  mt->add_option("--contexts", mt_contexts, "modeled issuer contexts")->capture_default_str();
  mt->add_option("--sizes", mt_sizes, "comma list of message sizes")->capture_default_str();
  mt->add_option("--scope", mt_scope, "process|thread")->capture_default_str();
  mt->add_option("--iters", mt_iters, "measured iterations per context")->capture_default_str();
  mt->add_option("--warmup", mt_warmup, "warmup iterations")->capture_default_str();
  add_common(mt, mt_c);

  auto* ord = app.add_subcommand("bench-ordering", "dependent chains under three disciplines");
  int ord_chain = 5;
  std::string ord_mode = "ordered_no_flush";
  int ord_iters = 2000, ord_warmup = 100;
  bool ord_inject = false;
  ord->add_option("--chain", ord_chain, "operations per chain (puts + closing accumulate)")
      ->capture_default_str();
  ord->add_option("--mode", ord_mode, "flush_between|ordered_no_flush|unordered_unlock_only")
      ->capture_default_str();
  ord->add_option("--iters", ord_iters, "measured iterations")->capture_default_str();
  ord->add_option("--warmup", ord_warmup, "warmup iterations")->capture_default_str();
  ord->add_flag("--inject-fence-bug", ord_inject,
                "test hook: drop the ordering key but keep the ordered oracle")
      ->group("");  // hidden
  add_common(ord, ord_c);

  auto* dm = app.add_subcommand("demo-memhandle", "end-to-end memory-handle flow");
  add_common(dm, dm_c);
  auto* dc = app.add_subcommand("demo-chain", "put-then-signal with and without ordering");
  add_common(dc, dc_c);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("rmax-bench");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.get_name() << ": " << e.what() << "\n";
    err << app.help();
    return 1;
  }

  try {
    if (put->parsed()) {
      bench::Scenario sc;
      if (!put_scenario.empty()) sc = bench::Scenario::from_file(put_scenario);
      if (put->count("--kind") || put_scenario.empty()) sc.kind = put_kind;
      if (put->count("--sizes") || put_scenario.empty()) sc.sizes = parse_sizes(put_sizes);
      if (put->count("--iters") || put_scenario.empty()) sc.iterations = put_iters;
      if (put->count("--warmup") || put_scenario.empty()) sc.warmup = put_warmup;
      if (put->count("--seed")) sc.seed = put_c.seed;
      else if (put_scenario.empty()) sc.seed = put_c.seed;
      sc.validate();
      auto ms = bench::bench_put_latency(bench::put_kind_from_string(sc.kind), sc.sizes,
                                         sc.iterations, sc.warmup, sc.seed, put_c.latency(),
                                         !put_unchecked);
      write_csv(ms, put_c, out);
    } else if (prog->parsed()) {
      auto mode = prog_mode == "rdma" ? bench::ProgressMode::rdma : bench::ProgressMode::am;
      if (prog_mode != "rdma" && prog_mode != "am")
        raise(Errc::invalid_scenario, "mode must be rdma or am");
      auto m = bench::bench_progress(prog_ops, prog_busy, mode, prog_c.seed, prog_c.latency(),
                                     !prog_unchecked);
      write_csv({m}, prog_c, out);
    } else if (mt->parsed()) {
      if (mt_scope != "process" && mt_scope != "thread")
        raise(Errc::invalid_scenario, "scope must be process or thread");
      auto ms = bench::bench_mt_flush(mt_contexts, parse_sizes(mt_sizes),
                                      mt_scope == "thread" ? WinScope::thread : WinScope::process,
                                      mt_iters, mt_warmup, mt_c.seed, mt_c.latency());
      write_csv(ms, mt_c, out);
    } else if (ord->parsed()) {
      auto m = bench::bench_ordering(ord_chain, bench::ordering_mode_from_string(ord_mode),
                                     ord_iters, ord_warmup, ord_c.seed, ord_c.latency(),
                                     ord_inject);
      write_csv({m}, ord_c, out);
    } else if (dm->parsed()) {
      demo_memhandle(out, dm_c.seed, dm_c.latency());
    } else if (dc->parsed()) {
      demo_chain(out, dc_c.seed, dc_c.latency());
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::oracle_mismatch ? 2 : 1;
  }
}

}  // namespace rmax::cli
