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

#ifndef RMAX_CORE_MEMHANDLE_HPP
#define RMAX_CORE_MEMHANDLE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "rmax/core/types.hpp"

namespace rmax {

/// Upper bound callers may rely on when sizing receive buffers for handles.
inline constexpr size_t MAX_MEMHANDLE_SIZE = 64;

/// Actual encoded size of the current (version 1) layout.
inline constexpr size_t MEMHANDLE_SIZE = 44;

/// "MHDL" in big-endian byte order.
inline constexpr uint32_t MEMHANDLE_MAGIC = 0x4D48444C;
inline constexpr uint8_t MEMHANDLE_VERSION = 1;

/// Opaque, versioned byte encoding of a RegistrationRecord, suitable for
/// out-of-band exchange between peers.
///
/// Layout (big-endian):
///   bytes  0-3   magic 0x4D48444C
///   byte   4     version (1)
///   byte   5     flags (0)
///   bytes  6-7   reserved (0)
///   bytes  8-11  owner rank        (u32)
///   bytes 12-19  base vaddr        (u64)
///   bytes 20-27  size in bytes     (u64)
///   bytes 28-35  rkey              (u64)
///   bytes 36-43  parent window id  (u64)
struct MemHandleBlob {
  std::array<std::byte, MAX_MEMHANDLE_SIZE> bytes{};
  size_t length = 0;

  std::span<const std::byte> view() const { return {bytes.data(), length}; }
};

MemHandleBlob encode_memhandle(const RegistrationRecord& record);

/// Inverse of encode_memhandle. Throws Errc::truncated, Errc::bad_magic or
/// Errc::bad_version on malformed input.
RegistrationRecord decode_memhandle(std::span<const std::byte> blob);

inline RegistrationRecord decode_memhandle(const MemHandleBlob& blob) {
  return decode_memhandle(blob.view());
}

}  // namespace rmax

#endif  // RMAX_CORE_MEMHANDLE_HPP
