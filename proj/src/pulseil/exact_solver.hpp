// Copyright 2026 The pulseil Authors
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

// Depth-first branch and bound over task-to-look assignments for desk-scale
// instances. Tasks are placed in row order, either into an already open look
// whose task set still packs, or into a fresh copy of an available group.
// Copies of a group are interchangeable, so only one fresh copy is branched.

#ifndef PULSEIL_EXACT_SOLVER_HPP_
#define PULSEIL_EXACT_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pulseil/ip_instance.hpp"

namespace pulseil {

struct ExactLimits {
  std::size_t max_tasks = 10;
  std::size_t max_prfs = 4;
  int max_interleave = 4;
  std::uint64_t node_budget = 50'000'000;
};

struct ExactResult {
  bool feasible = false;
  Schedule schedule;
  double objective = 0.0;
  std::uint64_t nodes = 0;
};

// Slot per member (same order as `cells`) with occupied slots exactly 1..m,
// k <= A_r and m <= k + A_l for every member; nullopt if no such packing.
// Earliest-deadline matching of the slot intervals [m - A_l, A_r] to 1..m.
std::optional<std::vector<int>> pack_look(std::span<const IpCell> cells,
                                          int max_interleave);

// Throws ResourceLimit beyond the limits or when the node budget runs out.
ExactResult solve_exact(const IpInstance& instance,
                        const ExactLimits& limits = {});

}  // namespace pulseil

#endif  // PULSEIL_EXACT_SOLVER_HPP_
