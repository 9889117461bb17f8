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

// Heuristic combinations side by side with the exact optimum.

#ifndef PULSEIL_ORACLE_COMPARE_HPP_
#define PULSEIL_ORACLE_COMPARE_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pulseil/exact_solver.hpp"
#include "pulseil/scenario.hpp"
#include "pulseil/schedule.hpp"

namespace pulseil {

// Every rule combination of one mode: 18 element-level or 36 subarray-level.
std::vector<SchedulerConfig> all_configs(Mode mode, BackendKind backend,
                                         std::uint64_t seed);

std::string config_label(const SchedulerConfig& cfg);

struct OracleRow {
  SchedulerConfig config;
  double objective = 0.0;
  std::size_t looks = 0;
  std::optional<double> ratio;  // heuristic / optimal
  bool feasible = false;
  std::size_t violations = 0;
};

struct OracleComparison {
  std::optional<ExactResult> edbf_exact;
  std::optional<ExactResult> sdbf_exact;
  std::vector<OracleRow> rows;
};

// With use_oracle false only the heuristics run. Throws ResourceLimit when
// the instance is beyond the exact solver's limits.
OracleComparison oracle_compare(const Scenario& scenario,
                                std::span<const SchedulerConfig> configs,
                                bool use_oracle = true,
                                const ExactLimits& limits = {});

std::string format_comparison(const OracleComparison& comparison);

}  // namespace pulseil

#endif  // PULSEIL_ORACLE_COMPARE_HPP_
