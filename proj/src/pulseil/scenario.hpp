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

// Scenario files (radar, PRFs, grid, tasks) and the seeded generator.

#ifndef PULSEIL_SCENARIO_HPP_
#define PULSEIL_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pulseil/radar_model.hpp"
#include "pulseil/scan_geometry.hpp"

namespace pulseil {

inline constexpr std::string_view kScenarioFormat = "pulseil-scenario/1";

struct Scenario {
  RadarConfig radar;
  std::vector<PrfConfig> prfs = default_prf_set();
  GridSpec grid;
  std::vector<TrackTask> tasks;  // ascending, unique ids

  // Validates every part and sorts tasks by id. Throws InvalidInput.
  void normalize();
  std::optional<TaskIndex> index_of(std::int64_t id) const;
};

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::string& path);
std::string dump_scenario(const Scenario& scenario);

struct ScenarioSpec {
  std::size_t task_count = 100;
  std::uint64_t seed = 0;
  double range_min = 20'000.0;
  double range_max = 120'000.0;
  double velocity_max = 400.0;  // |V_t| bound, m/s
  double sigma_range_min = 5.0;
  double sigma_range_max = 50.0;
  double sigma_freq_min = 5.0;
  double sigma_freq_max = 50.0;
  int cluster_count = 8;
  double cluster_radius = 0.15;  // direction-cosine units
  double field_radius = 0.8;     // cluster centers stay inside this disk
  bool keep_unschedulable = false;
  RadarConfig radar;
  std::vector<PrfConfig> prfs = default_prf_set();
  GridSpec grid;

  void validate() const;
};

// Deterministic in the generator options. Unless keep_unschedulable is set, draws are
// rejected until each task is trackable with at least one PRF.
Scenario generate_scenario(const ScenarioSpec& spec);

}  // namespace pulseil

#endif  // PULSEIL_SCENARIO_HPP_
