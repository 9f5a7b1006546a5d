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

#include <json.hpp>

#include "genbench/pipeline.hpp"

namespace genbench::detail {

nlohmann::ordered_json to_json(const Summary& s);
Summary summary_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const FeasibilityReport& r);
FeasibilityReport feasibility_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const NodeSetStats& s);
NodeSetStats node_stats_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const SimilarityReport& r);
SimilarityReport similarity_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const ScalarComparison& c, std::string_view a, std::string_view b);
ScalarComparison scalar_from_json(const nlohmann::ordered_json& j, std::string_view a, std::string_view b);
nlohmann::ordered_json to_json(const CutBlock& c, std::string_view a, std::string_view b);
CutBlock cut_block_from_json(const nlohmann::ordered_json& j, std::string_view a, std::string_view b);

}  // namespace genbench::detail
