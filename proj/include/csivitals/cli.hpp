// SPDX-License-Identifier: Apache-2.0
//
// csivitals - WiFi CSI vital-sign simulation and estimation toolkit
// Copyright (C) 2026 The csivitals authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csivitals {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
};

inline constexpr const char *kConfigEnvVar = "CSIVITALS_CONFIG";

// Entry point for `csivitals <synth|analyze|stream|plan|eval> ...`. `args`
// excludes the program name. `in` feeds `stream -`.
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace csivitals
