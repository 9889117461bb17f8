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

// Element-level DBF heuristic: pick a PRF by cardinality rule, run backward
// interleaving over the unscheduled tasks trackable with it, repeat.

#ifndef PULSEIL_EDBF_SCHEDULER_HPP_
#define PULSEIL_EDBF_SCHEDULER_HPP_

#include <span>
#include <vector>

#include "pulseil/radar_model.hpp"
#include "pulseil/schedule.hpp"

namespace pulseil {

// Frozen task-selection priorities for one run. Per-PRF values (SAR, LAR)
// use the ambiguous range at the look's PRF; the availability sums of SAP,
// SLA and SRA are taken over the initial table.
class TaskPriorities {
 public:
  TaskPriorities(TaskRule rule, std::span<const TrackTask> tasks,
                 const AvailabilityTable& table, std::uint64_t seed);

  PriorityKey key(TaskIndex task, PrfIndex prf) const;

 private:
  TaskRule rule_;
  const AvailabilityTable* table_;
  std::vector<double> static_value_;
  std::vector<std::uint64_t> random_value_;
};

// Stream constants separating the generators derived from one user seed.
inline constexpr std::uint64_t kPrfStream = 0x5052'4652'414e'4431ULL;
inline constexpr std::uint64_t kTaskStream = 0x5441'534b'524e'4431ULL;
inline constexpr std::uint64_t kDiskStream = 0x4449'534b'524e'4431ULL;

// Tasks with no available PRF are reported in Schedule::unschedulable and
// left out of every look.
Schedule run_edbf(std::span<const TrackTask> tasks,
                  std::span<const PrfConfig> prfs,
                  const AvailabilityTable& table, const RadarConfig& radar,
                  const SchedulerConfig& cfg, RunStats* stats = nullptr);

}  // namespace pulseil

#endif  // PULSEIL_EDBF_SCHEDULER_HPP_
