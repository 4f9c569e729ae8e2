// Copyright 2026 The lexnorm Authors
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


#ifndef LEXNORM_TOOLS_CLI_H_
#define LEXNORM_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace lexnorm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Runs the lexnorm command line. `args` excludes the program name. Data and
// metrics go to `out` (or to files named by options), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// 64-bit FNV-1a over `bytes`, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace lexnorm::cli

#endif  // LEXNORM_TOOLS_CLI_H_
