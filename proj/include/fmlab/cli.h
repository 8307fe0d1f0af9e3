// Copyright 2026 The fmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FMLAB_CLI_H_
#define FMLAB_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace fmlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitVerification = 3;

// Runs one `fmlab` command. `args` excludes the program name. Primary output
// goes to `out` unless --out names a file, in which case a sidecar
// <out>.manifest.json is written next to it.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace fmlab

#endif  // FMLAB_CLI_H_
