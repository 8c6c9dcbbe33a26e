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

#ifndef RMAX_BENCH_BENCHMARKS_HPP
#define RMAX_BENCH_BENCHMARKS_HPP

#include <iosfwd>

#include "rmax/bench/scenario.hpp"

namespace rmax::bench {

enum class PutKind { allocated, dynamic_rkey, dynamic_am, memhandle, memhandle_with_create };
enum class OrderingMode { flush_between, ordered_no_flush, unordered_unlock_only };
enum class ProgressMode { rdma, am };

PutKind put_kind_from_string(const std::string& s);
const char* put_kind_name(PutKind k);
OrderingMode ordering_mode_from_string(const std::string& s);
const char* ordering_mode_name(OrderingMode m);

/// Ping-style put+flush latency per message size. memhandle_with_create
/// additionally builds and frees the memory-handle window every iteration.
/// Every variant validates the final target contents against the last
/// payload before reporting; a report from a correctness-violating run is
/// impossible (Errc::oracle_mismatch instead).
std::vector<Measurement> bench_put_latency(PutKind kind, const std::vector<uint64_t>& sizes,
                                           int iterations, int warmup, uint64_t seed,
                                           const LatencyParams& latency, bool checked = true);

/// Target idles outside the runtime for busy_time_s of virtual time while
/// the origin issues n_ops single-byte put+flush pairs on a dynamic window.
/// A mean above busy_time/n_ops signals the path depends on target progress.
Measurement bench_progress(int n_ops, double busy_time_s, ProgressMode mode, uint64_t seed,
                           const LatencyParams& latency, bool checked = true);

/// Modeled worker contexts each run put+flush loops; process scope walks
/// every context's endpoint per flush, thread scope only the caller's.
std::vector<Measurement> bench_mt_flush(int contexts, const std::vector<uint64_t>& sizes,
                                        WinScope scope, int iterations, int warmup, uint64_t seed,
                                        const LatencyParams& latency);

/// Chains of dependent puts closed by an accumulate signal, under three
/// completion disciplines. The final-state oracle is enforced for
/// flush_between and ordered_no_flush; `reorder_observed`, when non-null,
/// reports whether any unordered chain completed out of issue order.
/// `inject_fence_bug` suppresses the ordering info key while keeping the
/// ordered oracle, to exercise the hard-failure path.
Measurement bench_ordering(int n_chain, OrderingMode mode, int iterations, int warmup,
                           uint64_t seed, const LatencyParams& latency,
                           bool inject_fence_bug = false, bool* reorder_observed = nullptr);

/// CSV with one row per measurement, deterministic order, fixed formatting.
void emit_csv(const std::vector<Measurement>& measurements, std::ostream& out);
void emit_csv_file(const std::vector<Measurement>& measurements, const std::string& path);
std::string csv_string(const std::vector<Measurement>& measurements);

}  // namespace rmax::bench

#endif  // RMAX_BENCH_BENCHMARKS_HPP
