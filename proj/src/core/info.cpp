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

#include "rmax/core/info.hpp"

#include "rmax/core/error.hpp"

namespace rmax {
namespace {

constexpr const char* kScope = "mpi_win_scope";
constexpr const char* kOrder = "mpi_win_order";
constexpr const char* kAssert = "mpi_assert_accumulate_intrinsic";
constexpr const char* kDynMode = "mpi_dynamic_mode";
constexpr const char* kAccOrder = "accumulate_ordering";

}  // namespace

InfoMap::InfoMap(std::initializer_list<std::pair<std::string, std::string>> kv) {
  for (const auto& [k, v] : kv) set(k, v);
}

bool InfoMap::valid_value(const std::string& key, const std::string& value) {
  if (key == kScope) return value == "process" || value == "thread";
  if (key == kOrder || key == kAssert) return value == "true" || value == "false";
  if (key == kDynMode) return value == "rkey_fetch" || value == "am";
  return true;  // accumulate_ordering and unrecognized keys: stored verbatim
}

void InfoMap::set(const std::string& key, const std::string& value) {
  if (!valid_value(key, value))
    raise(Errc::invalid_value, "info key " + key + " does not accept \"" + value + "\"");
  kv_[key] = value;
}

bool InfoMap::try_set(const std::string& key, const std::string& value) {
  if (!valid_value(key, value)) return false;
  kv_[key] = value;
  return true;
}

std::optional<std::string> InfoMap::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return std::nullopt;
  return it->second;
}

WinScope InfoMap::scope() const {
  return get(kScope).value_or("process") == "thread" ? WinScope::thread : WinScope::process;
}

bool InfoMap::ordered() const { return get(kOrder).value_or("false") == "true"; }

bool InfoMap::assert_accumulate_intrinsic() const {
  return get(kAssert).value_or("false") == "true";
}

DynamicMode InfoMap::dynamic_mode() const {
  return get(kDynMode).value_or("rkey_fetch") == "am" ? DynamicMode::am
                                                      : DynamicMode::rkey_fetch;
}

InfoMap InfoMap::effective() const {
  InfoMap out = *this;
  out.kv_.try_emplace(kScope, "process");
  out.kv_.try_emplace(kOrder, "false");
  out.kv_.try_emplace(kAssert, "false");
  out.kv_.try_emplace(kDynMode, "rkey_fetch");
  return out;
}

InfoMap InfoMap::overridden_by(const InfoMap& overrides) const {
  InfoMap out = *this;
  for (const auto& [k, v] : overrides.kv_) out.try_set(k, v);
  return out;
}

}  // namespace rmax
