// Copyright 2026 The Intertext Authors.
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

#ifndef INTERTEXT_TOOLS_CLI_H_
#define INTERTEXT_TOOLS_CLI_H_

#include <iosfwd>

namespace intertext::cli {

// Runs one `intertext` invocation. Data goes to files or `out`, diagnostics
// to `err`. Returns 0 on success (or --help), 1 on a usage error and 2 when
// an operation fails on its input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace intertext::cli

#endif  // INTERTEXT_TOOLS_CLI_H_
