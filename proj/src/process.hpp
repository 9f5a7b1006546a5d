/* Copyright 2026 GenBench contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace genbench::detail {

struct ProcessResult {
  int exit_code = 0;  // 128 + signal when terminated by a signal
  bool killed = false;
  bool launched = true;
  double wall_seconds = 0.0;
};

/// Runs argv[0] (a path) in its own process group with stdout and stderr
/// sent to `output`. The group is SIGKILLed once `kill_after` seconds pass.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::filesystem::path& output,
                          double kill_after);

}  // namespace genbench::detail
