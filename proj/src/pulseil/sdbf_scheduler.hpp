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

// Subarray-level DBF heuristic: pick a re-steering disk, run backward
// interleaving over its unscheduled tasks at the disk's PRF, then remove the
// scheduled tasks from every disk that encloses them.

#ifndef PULSEIL_SDBF_SCHEDULER_HPP_
#define PULSEIL_SDBF_SCHEDULER_HPP_

#include <span>

#include "pulseil/radar_model.hpp"
#include "pulseil/scan_geometry.hpp"
#include "pulseil/schedule.hpp"

namespace pulseil {

// GD and RGD with the random sub-rule use a bucket list over live disk
// cardinalities; every other combination keeps an ordered set keyed by
// (main index, sub-index, disk id). A disk leaves the selection structure
// once its live cardinality reaches zero.
Schedule run_sdbf(std::span<const TrackTask> tasks,
                  std::span<const PrfConfig> prfs,
                  const AvailabilityTable& table, const DiskCatalog& catalog,
                  const RadarConfig& radar, const SchedulerConfig& cfg,
                  RunStats* stats = nullptr);

}  // namespace pulseil

#endif  // PULSEIL_SDBF_SCHEDULER_HPP_
