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

#include "pulseil/pipeline.hpp"

#include <chrono>

#include "pulseil/edbf_scheduler.hpp"
#include "pulseil/sdbf_scheduler.hpp"

namespace pulseil {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

Schedule run_schedule(const Scenario& sc, const SchedulerConfig& cfg,
                      RunStats* stats) {
  const auto t0 = Clock::now();
  const AvailabilityTable table =
      AvailabilityTable::build(sc.tasks, sc.prfs, sc.radar);
  if (cfg.mode == Mode::kEdbf) {
    const double prep = seconds_since(t0);
    const auto t1 = Clock::now();
    Schedule s = run_edbf(sc.tasks, sc.prfs, table, sc.radar, cfg, stats);
    if (stats != nullptr) {
      stats->prep_seconds = prep;
      stats->schedule_seconds = seconds_since(t1);
    }
    return s;
  }
  const DiskCatalog catalog = DiskCatalog::build(table, sc.tasks, sc.grid);
  const double prep = seconds_since(t0);
  const auto t1 = Clock::now();
  Schedule s = run_sdbf(sc.tasks, sc.prfs, table, catalog, sc.radar, cfg, stats);
  if (stats != nullptr) {
    stats->prep_seconds = prep;
    stats->schedule_seconds = seconds_since(t1);
  }
  return s;
}

IpInstance verification_instance(const Scenario& sc, Mode mode) {
  const AvailabilityTable table =
      AvailabilityTable::build(sc.tasks, sc.prfs, sc.radar);
  const std::vector<double> dwells = look_dwells(sc.prfs, sc.radar);
  InstanceOptions opts;
  opts.exclude_unschedulable = true;
  if (mode == Mode::kEdbf) return IpInstance::edbf(table, dwells, opts);
  const DiskCatalog catalog = DiskCatalog::build(table, sc.tasks, sc.grid);
  return IpInstance::sdbf(table, catalog, dwells, opts);
}

std::vector<Violation> verify_schedule(const Scenario& sc,
                                       const Schedule& schedule) {
  Scenario local;
  const Scenario* use = &sc;
  // A subarray-level schedule carries the grid it was produced with.
  if (schedule.grid && (schedule.grid->spacing != sc.grid.spacing ||
                        schedule.grid->disk_radius != sc.grid.disk_radius)) {
    local = sc;
    local.grid = *schedule.grid;
    use = &local;
  }
  return check_feasible(schedule,
                        verification_instance(*use, schedule.config.mode));
}

}  // namespace pulseil
