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

#ifndef PULSEIL_SCHEDULE_HPP_
#define PULSEIL_SCHEDULE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pulseil/backward_interleaving.hpp"
#include "pulseil/radar_model.hpp"
#include "pulseil/scan_geometry.hpp"
#include "pulseil/selection.hpp"

namespace pulseil {

enum class Mode { kEdbf, kSdbf };
enum class PrfRule { kGreedy, kReverseGreedy, kRandom };
enum class TaskRule { kSar, kLar, kRandom, kSap, kSla, kSra };
enum class DiskRule { kGreedy, kReverseGreedy, kWeighted };
enum class SubRule { kRandom, kSmallestDwell };

inline constexpr PrfRule kAllPrfRules[] = {PrfRule::kGreedy,
                                           PrfRule::kReverseGreedy,
                                           PrfRule::kRandom};
inline constexpr TaskRule kAllTaskRules[] = {
    TaskRule::kSar, TaskRule::kLar, TaskRule::kRandom,
    TaskRule::kSap, TaskRule::kSla, TaskRule::kSra};
inline constexpr DiskRule kAllDiskRules[] = {
    DiskRule::kGreedy, DiskRule::kReverseGreedy, DiskRule::kWeighted};
inline constexpr SubRule kAllSubRules[] = {SubRule::kRandom,
                                           SubRule::kSmallestDwell};
inline constexpr BackendKind kAllBackends[] = {
    BackendKind::kBrute, BackendKind::kPairwise, BackendKind::kRangeTree};

std::string_view to_string(Mode v);
std::string_view to_string(PrfRule v);
std::string_view to_string(TaskRule v);
std::string_view to_string(DiskRule v);
std::string_view to_string(SubRule v);
std::optional<Mode> parse_mode(std::string_view s);
std::optional<PrfRule> parse_prf_rule(std::string_view s);
std::optional<TaskRule> parse_task_rule(std::string_view s);
std::optional<DiskRule> parse_disk_rule(std::string_view s);
std::optional<SubRule> parse_sub_rule(std::string_view s);

struct SchedulerConfig {
  Mode mode = Mode::kEdbf;
  PrfRule prf_rule = PrfRule::kGreedy;
  TaskRule task_rule = TaskRule::kSar;
  DiskRule disk_rule = DiskRule::kGreedy;
  SubRule sub_rule = SubRule::kSmallestDwell;
  BackendKind backend = BackendKind::kRangeTree;
  std::uint64_t seed = 0;
  bool enforce_iteration_bound = true;
};

// t_d = pulses_per_look / f_r.
double look_dwell(const PrfConfig& prf, const RadarConfig& cfg);
std::vector<double> look_dwells(std::span<const PrfConfig> prfs,
                                const RadarConfig& cfg);

// sum_p counts[p] * dwell[p], accumulated in PRF order. Every objective in
// the library goes through this, so equal look counts give equal doubles.
double objective_from_counts(std::span<const std::uint64_t> looks_per_prf,
                             std::span<const double> dwell_per_prf);

struct Placement {
  TaskIndex task = 0;
  int slot = 0;
};

struct ScheduledLook {
  PrfIndex prf = 0;
  double frequency = 0.0;
  double dwell = 0.0;
  std::optional<DiskId> disk;  // subarray-level looks only
  GridPoint grid;
  ScanPoint center;
  std::vector<Placement> placements;  // ascending slot
};

struct Schedule {
  SchedulerConfig config;
  std::optional<GridSpec> grid;  // subarray-level runs only
  std::vector<ScheduledLook> looks;
  std::vector<TaskIndex> unschedulable;

  std::size_t scheduled_task_count() const;
  std::vector<std::uint64_t> looks_per_prf(std::size_t prf_count) const;
  double objective(std::span<const double> dwell_per_prf) const;
};

struct RunStats {
  InterleaveStats interleave;
  BackendStats backend;
  std::uint64_t selection_ops = 0;  // bucket splices or ordered-set steps
  std::uint64_t selections = 0;
  std::uint64_t max_selection_ops = 0;
  std::uint64_t update_ops = 0;  // per-key maintenance after each look
  std::uint64_t updates = 0;
  std::uint64_t max_update_ops = 0;
  std::size_t disk_count = 0;
  std::size_t membership_count = 0;  // Q_p or Q_d
  double prep_seconds = 0.0;
  double schedule_seconds = 0.0;

  void note_selection(std::uint64_t ops);
  void note_update(std::uint64_t ops);
  // Adds counters and keeps maxima; timings and sizes are left alone.
  void merge_counters(const RunStats& other);
};

}  // namespace pulseil

#endif  // PULSEIL_SCHEDULE_HPP_
