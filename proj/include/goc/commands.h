/*
 * Copyright 2026 The goc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GOC_COMMANDS_H_
#define GOC_COMMANDS_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "goc/config.h"

namespace goc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Flags shared by all commands; unset flags fall back to the config.
struct CommandOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<double> eta;
  std::optional<double> alpha;
  std::optional<std::string> alphas;
  std::optional<std::string> adversary_path;
};

const std::vector<std::string>& command_names();
std::string usage();

// --out, then the config's output_dir, then $GOC_OUTPUT_DIR, then ./goc_out.
std::filesystem::path resolve_output_dir(const CommandOptions& opts,
                                         const RunConfig& cfg);

// Runs one command and writes its artifacts. Returns the process exit code:
// 0 success, 1 computation or check failure, 2 usage or config error. Errors
// are reported on `err` as a JSON object; `out` gets a short summary.
int dispatch(const std::string& command, const CommandOptions& opts,
             std::ostream& out, std::ostream& err);

}  // namespace goc

#endif  // GOC_COMMANDS_H_
