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

#include <algorithm>
#include <cctype>
#include <functional>
#include <random>
#include <sstream>

#include "rmax/core/info.hpp"
#include "rmax/core/latency.hpp"
#include "rmax/core/memhandle.hpp"
#include "rmax/core/ops_string.hpp"
#include "rmax/core/reduce.hpp"

using namespace rmax;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ok;
}

}  // namespace

TEST_CASE("memhandle layout: magic, version, length") {
  RegistrationRecord r{0, 0, 1, 0, 0};
  MemHandleBlob b = encode_memhandle(r);
  CHECK(b.length == 44);
  CHECK(uint8_t(b.bytes[0]) == 0x4D);
  CHECK(uint8_t(b.bytes[1]) == 0x48);
  CHECK(uint8_t(b.bytes[2]) == 0x44);
  CHECK(uint8_t(b.bytes[3]) == 0x4C);
  CHECK(uint8_t(b.bytes[4]) == 1);
}

TEST_CASE("memhandle fixed vector is byte-exact") {
  RegistrationRecord r{3, 0x1000, 4096, 7, 2};
  MemHandleBlob b = encode_memhandle(r);
  const uint8_t expect[44] = {
      0x4D, 0x48, 0x44, 0x4C,                          // magic
      0x01, 0x00, 0x00, 0x00,                          // version, flags, reserved
      0x00, 0x00, 0x00, 0x03,                          // owner
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x10, 0x00,  // base
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x10, 0x00,  // size
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x07,  // rkey
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x02,  // parent window id
  };
  REQUIRE(b.length == 44);
  for (size_t i = 0; i < 44; ++i) CHECK(uint8_t(b.bytes[i]) == expect[i]);
  CHECK(decode_memhandle(b) == r);
}

TEST_CASE("memhandle randomized round-trip") {
  std::mt19937_64 rng(20260808);
  for (int i = 0; i < 1000; ++i) {
    RegistrationRecord r;
    r.owner = Rank(rng() % 4096);
    r.base = rng();
    r.size = rng();
    r.rkey = rng();
    r.parent_window_id = rng();
    MemHandleBlob b = encode_memhandle(r);
    CHECK(b.length == 44);
    CHECK(b.length <= MAX_MEMHANDLE_SIZE);
    CHECK(decode_memhandle(b) == r);
  }
}

TEST_CASE("memhandle decode rejects malformed input") {
  RegistrationRecord r{1, 64, 128, 9, 5};
  MemHandleBlob good = encode_memhandle(r);

  MemHandleBlob zero_magic = good;
  zero_magic.bytes[0] = zero_magic.bytes[1] = zero_magic.bytes[2] = zero_magic.bytes[3] =
      std::byte{0};
  CHECK(code_of([&] { decode_memhandle(zero_magic); }) == Errc::bad_magic);

  MemHandleBlob bad_version = good;
  bad_version.bytes[4] = std::byte{9};
  CHECK(code_of([&] { decode_memhandle(bad_version); }) == Errc::bad_version);

  CHECK(code_of([&] { decode_memhandle(std::span(good.bytes.data(), 20)); }) == Errc::truncated);
}

TEST_CASE("parse_ops_string examples") {
  CHECK(parse_ops_string("sum") == OpSet{{ReduceOp::sum}, false});
  CHECK(parse_ops_string("sum,cas,replace") == OpSet{{ReduceOp::sum, ReduceOp::replace}, true});
  try {
    parse_ops_string("fma");
    FAIL("expected invalid-ops-string");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_ops_string);
    CHECK(std::string(e.what()).find("fma") != std::string::npos);
  }
}

TEST_CASE("parse_ops_string is whitespace, case and order insensitive") {
  CHECK(parse_ops_string(" sum , max ") == parse_ops_string("max,sum"));
  CHECK(parse_ops_string("SUM") == parse_ops_string("sum"));

  const char* names[] = {"sum", "prod", "min", "max", "band", "bor", "bxor",
                         "replace", "no_op", "cas"};
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::vector<std::string> subset;
    for (const char* n : names)
      if (rng() & 1) subset.push_back(n);
    if (subset.empty()) subset.push_back("sum");
    std::string spaced, shuffled;
    std::vector<std::string> perm = subset;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (size_t i = 0; i < subset.size(); ++i) {
      std::string tok = subset[i];
      if (rng() & 1)
        for (char& c : tok) c = char(std::toupper(static_cast<unsigned char>(c)));
      spaced += (rng() & 1 ? " " : "") + tok + (rng() & 1 ? "  " : "");
      if (i + 1 < subset.size()) spaced += ",";
    }
    for (size_t i = 0; i < perm.size(); ++i)
      shuffled += perm[i] + (i + 1 < perm.size() ? "," : "");
    CHECK(parse_ops_string(spaced) == parse_ops_string(shuffled));
  }
}

TEST_CASE("parse_ops_string rejects empty tokens inside lists") {
  CHECK(code_of([] { parse_ops_string("sum,,max"); }) == Errc::invalid_ops_string);
  CHECK(parse_ops_string("").empty());
  CHECK(parse_ops_string("  ").empty());
}

TEST_CASE("datatype sizes") {
  CHECK(datatype_size(Datatype::byte) == 1);
  CHECK(datatype_size(Datatype::int32) == 4);
  CHECK(datatype_size(Datatype::int64) == 8);
  CHECK(datatype_size(Datatype::float32) == 4);
  CHECK(datatype_size(Datatype::float64) == 8);
  CHECK(reduce_valid_for(ReduceOp::band, Datatype::int64));
  CHECK(!reduce_valid_for(ReduceOp::bxor, Datatype::float32));
  CHECK(reduce_valid_for(ReduceOp::sum, Datatype::float64));
}

TEST_CASE("info map validates recognized keys and keeps unknown ones") {
  InfoMap info;
  info.set("mpi_win_order", "true");
  CHECK(info.ordered());
  info.set("color", "purple");
  CHECK(info.get("color") == "purple");
  CHECK(code_of([&] { info.set("mpi_win_scope", "bogus"); }) == Errc::invalid_value);
  CHECK(info.scope() == WinScope::process);
  info.set("mpi_win_scope", "thread");
  CHECK(info.scope() == WinScope::thread);
  CHECK(!info.try_set("mpi_dynamic_mode", "carrier_pigeon"));
  CHECK(info.dynamic_mode() == DynamicMode::rkey_fetch);
  info.set("accumulate_ordering", "rar,war");  // stored verbatim
  CHECK(info.get("accumulate_ordering") == "rar,war");

  InfoMap eff = info.effective();
  CHECK(eff.get("mpi_win_order") == "true");
  CHECK(eff.get("mpi_assert_accumulate_intrinsic") == "false");
}

TEST_CASE("info override semantics used by window duplication") {
  InfoMap parent{{"mpi_win_scope", "thread"}, {"custom", "x"}};
  InfoMap merged = parent.overridden_by(InfoMap{{"mpi_win_order", "true"}});
  CHECK(merged.scope() == WinScope::thread);
  CHECK(merged.ordered());
  CHECK(merged.get("custom") == "x");
}

TEST_CASE("latency params validate and load from key=value text") {
  LatencyParams p;
  p.validate();
  CHECK(p.t_rtt == doctest::Approx(2.0));

  std::istringstream file(
      "# timing model\n"
      "t_rtt = 4.0\n"
      "bandwidth=12500\n"
      "unknown_key = ignored\n");
  auto kv = read_kv_stream(file);
  p.apply(kv);
  CHECK(p.t_rtt == doctest::Approx(4.0));
  CHECK(p.bandwidth == doctest::Approx(12500));
  CHECK(p.t_inject == doctest::Approx(0.2));

  LatencyParams bad;
  bad.t_inject = 0;
  CHECK(code_of([&] { bad.validate(); }) == Errc::invalid_value);
}

TEST_CASE("reduce application on raw bytes") {
  int64_t target = 10, operand = 5;
  apply_reduce(ReduceOp::sum, Datatype::int64, 1, reinterpret_cast<std::byte*>(&target),
               reinterpret_cast<const std::byte*>(&operand));
  CHECK(target == 15);
  apply_reduce(ReduceOp::max, Datatype::int64, 1, reinterpret_cast<std::byte*>(&target),
               reinterpret_cast<const std::byte*>(&operand));
  CHECK(target == 15);
  apply_reduce(ReduceOp::replace, Datatype::int64, 1, reinterpret_cast<std::byte*>(&target),
               reinterpret_cast<const std::byte*>(&operand));
  CHECK(target == 5);
  size_t written =
      apply_reduce(ReduceOp::no_op, Datatype::int64, 1, reinterpret_cast<std::byte*>(&target),
                   reinterpret_cast<const std::byte*>(&operand));
  CHECK(written == 0);
  CHECK(target == 5);

  int32_t t32 = 3, cmp = 3, des = 9;
  CHECK(apply_compare_swap(Datatype::int32, reinterpret_cast<std::byte*>(&t32),
                           reinterpret_cast<const std::byte*>(&cmp),
                           reinterpret_cast<const std::byte*>(&des)));
  CHECK(t32 == 9);
  CHECK(!apply_compare_swap(Datatype::int32, reinterpret_cast<std::byte*>(&t32),
                            reinterpret_cast<const std::byte*>(&cmp),
                            reinterpret_cast<const std::byte*>(&des)));
  CHECK(t32 == 9);
}
