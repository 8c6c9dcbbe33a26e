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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "rmax/bench/benchmarks.hpp"
#include "rmax/cli/cli.hpp"
#include "rmax/core/error.hpp"

using namespace rmax;
using namespace rmax::bench;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ok;
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::ostringstream out, err;
  int rc = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("csv emission: header-only for empty input, one row per measurement") {
  CHECK(csv_string({}) ==
        "scenario,kind,size_bytes,contexts,scope,ordered,mean_us,p50_us,p99_us,events_per_op\n");
  Measurement m;
  m.scenario = "bench_put";
  m.kind = "allocated";
  m.size_bytes = 8;
  m.mean_us = 2.5;
  m.p50_us = 2.5;
  m.p99_us = 2.5;
  m.events_per_op = 4;
  std::string two = csv_string({m, m});
  CHECK(std::count(two.begin(), two.end(), '\n') == 3);
  CHECK(two.find("bench_put,allocated,8,1,process,false,2.500000,2.500000,2.500000,4.000") !=
        std::string::npos);
}

TEST_CASE("percentile is nearest-rank and ordered") {
  std::vector<double> s{5, 1, 4, 2, 3};
  CHECK(percentile(s, 0.5) == 3);
  CHECK(percentile(s, 0.99) == 5);
  CHECK(percentile(s, 0.01) == 1);
  CHECK(percentile({}, 0.5) == 0);
}

TEST_CASE("identical scenario and seed give byte-identical CSV") {
  auto run = [] {
    auto ms = bench_put_latency(PutKind::allocated, {8, 64}, 200, 20, 7, LatencyParams{});
    auto more = bench_put_latency(PutKind::dynamic_rkey, {8}, 200, 20, 7, LatencyParams{});
    ms.insert(ms.end(), more.begin(), more.end());
    return csv_string(ms);
  };
  CHECK(run() == run());
}

TEST_CASE("mean latency is non-decreasing in message size for every kind") {
  for (PutKind k : {PutKind::allocated, PutKind::dynamic_rkey, PutKind::dynamic_am,
                    PutKind::memhandle, PutKind::memhandle_with_create}) {
    auto ms = bench_put_latency(k, {8, 4096, 65536}, 100, 10, 42, LatencyParams{});
    REQUIRE(ms.size() == 3);
    CHECK(ms[0].mean_us <= ms[1].mean_us);
    CHECK(ms[1].mean_us <= ms[2].mean_us);
    CHECK(ms[0].p50_us <= ms[0].p99_us);
  }
}

TEST_CASE("bench_ordering separates the three disciplines and honors its oracle") {
  LatencyParams lat;
  auto flushy = bench_ordering(5, OrderingMode::flush_between, 300, 30, 42, lat);
  auto ordered = bench_ordering(5, OrderingMode::ordered_no_flush, 300, 30, 42, lat);
  bool reordered = false;
  auto unordered =
      bench_ordering(5, OrderingMode::unordered_unlock_only, 300, 30, 42, lat, false, &reordered);
  CHECK(ordered.mean_us < flushy.mean_us);
  CHECK(ordered.mean_us > unordered.mean_us);
  CHECK(reordered);  // seed 42 exhibits at least one reordered chain
}

TEST_CASE("an injected fence bug trips the ordering oracle") {
  CHECK(code_of([] {
          bench_ordering(5, OrderingMode::ordered_no_flush, 400, 0, 42, LatencyParams{}, true);
        }) == Errc::oracle_mismatch);
}

TEST_CASE("scenario files load and validate") {
  const char* path = "scenario_test.kv";
  {
    std::ofstream f(path);
    f << "name = custom\nkind = memhandle\nsizes = 8,1k\niterations = 50\nwarmup = 5\n"
         "contexts = 2\nscope = thread\nordered = true\ndynamic_mode = am\nseed = 9\n";
  }
  Scenario s = Scenario::from_file(path);
  CHECK(s.name == "custom");
  CHECK(s.kind == "memhandle");
  CHECK(s.sizes == std::vector<uint64_t>{8, 1024});
  CHECK(s.iterations == 50);
  CHECK(s.contexts == 2);
  CHECK(s.scope == WinScope::thread);
  CHECK(s.ordered);
  CHECK(s.dynamic_mode == DynamicMode::am);
  CHECK(s.seed == 9);
  std::remove(path);

  Scenario bad;
  bad.iterations = 0;
  CHECK(code_of([&] { bad.validate(); }) == Errc::invalid_scenario);
  bad.iterations = 1;
  bad.sizes.clear();
  CHECK(code_of([&] { bad.validate(); }) == Errc::invalid_scenario);
}

TEST_CASE("cli help exits 0 and lists every subcommand") {
  std::string out;
  CHECK(run_cli({"--help"}, &out) == 0);
  for (const char* cmd : {"bench-put", "bench-progress", "bench-mt-flush", "bench-ordering",
                          "demo-memhandle", "demo-chain"})
    CHECK(out.find(cmd) != std::string::npos);
}

TEST_CASE("cli usage errors exit 1 with help on stderr") {
  std::string out, err;
  CHECK(run_cli({"bench-nope"}, &out, &err) == 1);
  CHECK(!err.empty());
  CHECK(run_cli({"bench-put", "--no-such-flag"}, &out, &err) == 1);
  CHECK(run_cli({}, &out, &err) == 1);  // a subcommand is required
}

TEST_CASE("cli writes deterministic CSV to a file and to stdout") {
  const char* path = "cli_out.csv";
  std::string out1, out2;
  CHECK(run_cli({"bench-put", "--kind", "memhandle", "--sizes", "8,64", "--iters", "100",
                 "--warmup", "10", "--seed", "7", "-o", path}) == 0);
  std::string file1 = slurp(path);
  CHECK(run_cli({"bench-put", "--kind", "memhandle", "--sizes", "8,64", "--iters", "100",
                 "--warmup", "10", "--seed", "7"},
                &out1) == 0);
  CHECK(run_cli({"bench-put", "--kind", "memhandle", "--sizes", "8,64", "--iters", "100",
                 "--warmup", "10", "--seed", "7"},
                &out2) == 0);
  CHECK(out1 == out2);
  CHECK(file1 == out1);
  CHECK(file1.find("memhandle,8,") != std::string::npos);
  CHECK(file1.find("memhandle,64,") != std::string::npos);
  std::remove(path);
}

TEST_CASE("cli seed resolution: env supplies the default, the flag wins") {
  std::string base, env_run, flag_run;
  CHECK(run_cli({"bench-put", "--sizes", "8", "--iters", "50", "--seed", "11"}, &base) == 0);

  setenv("RMALIB_SEED", "11", 1);
  CHECK(run_cli({"bench-put", "--sizes", "8", "--iters", "50"}, &env_run) == 0);
  CHECK(env_run == base);

  CHECK(run_cli({"bench-put", "--sizes", "8", "--iters", "50", "--seed", "12"}, &flag_run) == 0);
  CHECK(flag_run != base);  // the flag overrides the environment
  unsetenv("RMALIB_SEED");
}

TEST_CASE("cli scenario file drives bench-put, flags override") {
  const char* path = "scenario_cli.kv";
  {
    std::ofstream f(path);
    f << "kind = allocated\nsizes = 8\niterations = 60\nwarmup = 6\nseed = 5\n";
  }
  std::string from_file, overridden, direct;
  CHECK(run_cli({"bench-put", "--scenario", path}, &from_file) == 0);
  CHECK(run_cli({"bench-put", "--sizes", "8", "--iters", "60", "--warmup", "6", "--seed", "5"},
                &direct) == 0);
  CHECK(from_file == direct);
  CHECK(run_cli({"bench-put", "--scenario", path, "--kind", "memhandle"}, &overridden) == 0);
  CHECK(overridden.find("memhandle") != std::string::npos);
  std::remove(path);
}

TEST_CASE("cli ordering oracle failure exits 2") {
  std::string out, err;
  CHECK(run_cli({"bench-ordering", "--mode", "ordered_no_flush", "--iters", "400", "--warmup",
                 "0", "--inject-fence-bug"},
                &out, &err) == 2);
  CHECK(err.find("oracle") != std::string::npos);
}

TEST_CASE("cli demos run clean") {
  std::string out;
  CHECK(run_cli({"demo-memhandle"}, &out) == 0);
  CHECK(out.find("memhandle_create") != std::string::npos);
  CHECK(out.find("win_from_memhandle") != std::string::npos);
  CHECK(out.find("memhandle_release") != std::string::npos);
  std::string out2;
  CHECK(run_cli({"demo-memhandle"}, &out2) == 0);
  CHECK(out == out2);  // deterministic output

  CHECK(run_cli({"demo-chain"}, &out) == 0);
  CHECK(out.find("ordered chain") != std::string::npos);
}

TEST_CASE("unchecked mode drops the per-op verification cost on the rkey path") {
  double checked =
      bench_put_latency(PutKind::dynamic_rkey, {8}, 200, 20, 42, LatencyParams{}, true)[0]
          .mean_us;
  double unchecked =
      bench_put_latency(PutKind::dynamic_rkey, {8}, 200, 20, 42, LatencyParams{}, false)[0]
          .mean_us;
  // Without verification, a cached dynamic window matches the allocated path.
  double allocated =
      bench_put_latency(PutKind::allocated, {8}, 200, 20, 42, LatencyParams{})[0].mean_us;
  CHECK(unchecked < checked);
  CHECK(unchecked == doctest::Approx(allocated).epsilon(0.01));

  std::string out;
  CHECK(run_cli({"bench-put", "--kind", "dynamic_rkey", "--sizes", "8", "--iters", "100",
                 "--unchecked"},
                &out) == 0);
}

TEST_CASE("cli latency params file feeds the model") {
  const char* path = "params_test.kv";
  {
    std::ofstream f(path);
    f << "t_rtt = 8.0\n";
  }
  std::string slow, fast;
  CHECK(run_cli({"bench-put", "--sizes", "8", "--iters", "50", "--params", path}, &slow) == 0);
  CHECK(run_cli({"bench-put", "--sizes", "8", "--iters", "50"}, &fast) == 0);
  // Mean with a 8us round trip must exceed the default 2us one.
  auto mean_of = [](const std::string& csv) {
    size_t nl = csv.find('\n');
    std::string row = csv.substr(nl + 1);
    for (int i = 0; i < 6; ++i) row = row.substr(row.find(',') + 1);
    return std::stod(row);
  };
  CHECK(mean_of(slow) > mean_of(fast) + 5.0);
  std::remove(path);
}
