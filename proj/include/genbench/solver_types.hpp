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

#include <string_view>

namespace genbench {

enum class SolverId { Gurobi, Scip, Highs };

std::string_view to_string(SolverId id);
SolverId solver_from_string(std::string_view name);  // throws InvalidConfig

enum class SolveStatus { Optimal, FeasibleTimeLimit, Infeasible, Unbounded, TimeLimitNoIncumbent, Error };

std::string_view to_string(SolveStatus status);
SolveStatus status_from_string(std::string_view name);  // throws InvalidConfig

}  // namespace genbench
