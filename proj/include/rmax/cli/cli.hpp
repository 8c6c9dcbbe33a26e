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

#ifndef RMAX_CLI_CLI_HPP
#define RMAX_CLI_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rmax::cli {

/// Runs the benchmark/demo command line. `args` excludes the program name.
/// Returns 0 on success, 1 on usage errors, 2 when a correctness oracle
/// fails. The RMALIB_SEED environment variable overrides the default seed;
/// an explicit --seed flag wins over the environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmax::cli

#endif  // RMAX_CLI_CLI_HPP
