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

#ifndef RMAX_CORE_INFO_HPP
#define RMAX_CORE_INFO_HPP

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace rmax {

/// Whether synchronization covers the whole process or only the calling context.
enum class WinScope { process, thread };

/// Transport path for operations on dynamic windows.
enum class DynamicMode { rkey_fetch, am };

/// String key/value configuration attached to windows.
///
/// Recognized keys and their domains:
///   mpi_win_scope                   process | thread      (default process)
///   mpi_win_order                   true | false          (default false)
///   mpi_assert_accumulate_intrinsic true | false          (default false)
///   mpi_dynamic_mode                rkey_fetch | am       (default rkey_fetch)
///   accumulate_ordering             any value, stored verbatim
///
/// Unrecognized keys are preserved verbatim and echoed back by queries.
class InfoMap {
 public:
  InfoMap() = default;
  InfoMap(std::initializer_list<std::pair<std::string, std::string>> kv);

  /// Validating set: a recognized key with a value outside its domain raises
  /// Errc::invalid_value.
  void set(const std::string& key, const std::string& value);

  /// Non-throwing set used by window duplication, where an unsupported change
  /// is rejected by retaining the prior value. Returns false on rejection.
  bool try_set(const std::string& key, const std::string& value);

  std::optional<std::string> get(const std::string& key) const;
  bool contains(const std::string& key) const { return kv_.contains(key); }
  size_t size() const { return kv_.size(); }
  const std::map<std::string, std::string>& entries() const { return kv_; }

  // Typed views with defaults applied.
  WinScope scope() const;
  bool ordered() const;
  bool assert_accumulate_intrinsic() const;
  DynamicMode dynamic_mode() const;

  /// Copy of this map with all recognized keys present at their effective
  /// values (explicit settings or defaults).
  InfoMap effective() const;

  /// This map overridden by `overrides`, with invalid values rejected
  /// (prior/default retained) rather than raised.
  InfoMap overridden_by(const InfoMap& overrides) const;

  bool operator==(const InfoMap&) const = default;

 private:
  static bool valid_value(const std::string& key, const std::string& value);

  std::map<std::string, std::string> kv_;
};

}  // namespace rmax

#endif  // RMAX_CORE_INFO_HPP
