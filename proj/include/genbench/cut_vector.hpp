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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace genbench {

inline constexpr std::size_t kNumCutSlots = 12;

/// Per-class applied cut counts in canonical slot order.
using CutVector = std::array<std::int64_t, kNumCutSlots>;

inline constexpr std::array<std::string_view, kNumCutSlots> kCutSlotNames = {
    "Gomory", "ZeroHalf", "Clique",   "MIR",      "RLT",      "FlowCover",
    "Cover",  "ModK",     "RelaxLift", "InfProof", "StrongCG", "ImplBound"};

inline std::optional<std::size_t> cut_slot_index(std::string_view name)
{
  for (std::size_t i = 0; i < kNumCutSlots; ++i)
    if (kCutSlotNames[i] == name) return i;
  return std::nullopt;
}

}  // namespace genbench
