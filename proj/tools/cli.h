// Copyright 2026 The morphtok Authors
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

#ifndef MORPHTOK_TOOLS_CLI_H_
#define MORPHTOK_TOOLS_CLI_H_

#include <string>
#include <vector>

namespace morphtok {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;

// Runs the morphtok command line. `args` excludes the program name. Usage
// and errors go to stderr, logs too; data is written only to files.
int RunCli(const std::vector<std::string>& args);

// Multi-line toolkit and data-format version report.
std::string VersionText();

}  // namespace morphtok

#endif  // MORPHTOK_TOOLS_CLI_H_
