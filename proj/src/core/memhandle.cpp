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

#include "rmax/core/memhandle.hpp"

#include <cstring>

#include "rmax/core/error.hpp"

namespace rmax {
namespace {

void put_u32_be(std::byte* p, uint32_t v) {
  p[0] = std::byte(v >> 24);
  p[1] = std::byte(v >> 16);
  p[2] = std::byte(v >> 8);
  p[3] = std::byte(v);
}

void put_u64_be(std::byte* p, uint64_t v) {
  put_u32_be(p, uint32_t(v >> 32));
  put_u32_be(p + 4, uint32_t(v));
}

uint32_t get_u32_be(const std::byte* p) {
  return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

uint64_t get_u64_be(const std::byte* p) {
  return (uint64_t(get_u32_be(p)) << 32) | get_u32_be(p + 4);
}

}  // namespace

MemHandleBlob encode_memhandle(const RegistrationRecord& record) {
  MemHandleBlob blob;
  std::byte* p = blob.bytes.data();
  put_u32_be(p + 0, MEMHANDLE_MAGIC);
  p[4] = std::byte(MEMHANDLE_VERSION);
  p[5] = std::byte(0);  // flags
  p[6] = std::byte(0);  // reserved
  p[7] = std::byte(0);
  put_u32_be(p + 8, uint32_t(record.owner));
  put_u64_be(p + 12, record.base);
  put_u64_be(p + 20, record.size);
  put_u64_be(p + 28, record.rkey);
  put_u64_be(p + 36, record.parent_window_id);
  blob.length = MEMHANDLE_SIZE;
  return blob;
}

RegistrationRecord decode_memhandle(std::span<const std::byte> blob) {
  if (blob.size() < MEMHANDLE_SIZE)
    raise(Errc::truncated,
          "memory handle is " + std::to_string(blob.size()) + " bytes, need " +
              std::to_string(MEMHANDLE_SIZE));
  const std::byte* p = blob.data();
  if (get_u32_be(p) != MEMHANDLE_MAGIC) raise(Errc::bad_magic, "not a memory handle");
  if (uint8_t(p[4]) != MEMHANDLE_VERSION)
    raise(Errc::bad_version, "unsupported handle version " + std::to_string(uint8_t(p[4])));
  RegistrationRecord r;
  r.owner = Rank(get_u32_be(p + 8));
  r.base = get_u64_be(p + 12);
  r.size = get_u64_be(p + 20);
  r.rkey = get_u64_be(p + 28);
  r.parent_window_id = get_u64_be(p + 36);
  return r;
}

}  // namespace rmax
