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

#include "rmax/core/ops_string.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "rmax/core/error.hpp"

namespace rmax {
namespace {

std::string trim_lower(std::string_view tok) {
  size_t b = 0, e = tok.size();
  while (b < e && std::isspace(static_cast<unsigned char>(tok[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(tok[e - 1]))) --e;
  std::string out(tok.substr(b, e - b));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return out;
}

}  // namespace

OpSet parse_ops_string(std::string_view ops) {
  OpSet result;
  if (trim_lower(ops).empty()) return result;

  size_t pos = 0;
  while (pos <= ops.size()) {
    size_t comma = ops.find(',', pos);
    std::string_view raw =
        comma == std::string_view::npos ? ops.substr(pos) : ops.substr(pos, comma - pos);
    std::string tok = trim_lower(raw);
    if (tok == "sum") result.reduce.insert(ReduceOp::sum);
    else if (tok == "prod") result.reduce.insert(ReduceOp::prod);
    else if (tok == "min") result.reduce.insert(ReduceOp::min);
    else if (tok == "max") result.reduce.insert(ReduceOp::max);
    else if (tok == "band") result.reduce.insert(ReduceOp::band);
    else if (tok == "bor") result.reduce.insert(ReduceOp::bor);
    else if (tok == "bxor") result.reduce.insert(ReduceOp::bxor);
    else if (tok == "replace") result.reduce.insert(ReduceOp::replace);
    else if (tok == "no_op") result.reduce.insert(ReduceOp::no_op);
    else if (tok == "cas") result.cas = true;
    else raise(Errc::invalid_ops_string, "unknown operation \"" + tok + "\"");
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return result;
}

}  // namespace rmax
