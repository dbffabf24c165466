//
// Copyright 2026 The CADEC Authors
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
//

#ifndef CADEC_TOOLS_CLI_H_
#define CADEC_TOOLS_CLI_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cadec::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Entry point of the `cadec` tool. args[0] is the program name. Regular
// output goes to `out`, diagnostics and training logs to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Flat `key = value` file; '#' starts a comment line. Throws UsageError on a
// line without '=' and DataError when the file cannot be read.
std::map<std::string, std::string> parse_config_file(const std::string& path);
std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& source);

}  // namespace cadec::cli

#endif  // CADEC_TOOLS_CLI_H_
