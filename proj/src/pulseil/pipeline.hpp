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

// Scenario-to-schedule glue shared by the C API, the bench and the tests.

#ifndef PULSEIL_PIPELINE_HPP_
#define PULSEIL_PIPELINE_HPP_

#include <vector>

#include "pulseil/ip_instance.hpp"
#include "pulseil/scenario.hpp"
#include "pulseil/schedule.hpp"

namespace pulseil {

// Builds the availability table (and disk catalog for sdbf), then runs the
// configured heuristic. Preparation and scheduling are timed separately.
Schedule run_schedule(const Scenario& scenario, const SchedulerConfig& cfg,
                      RunStats* stats = nullptr);

// The instance a schedule of this mode is checked against: every PRF (or
// every catalogued disk) with unschedulable tasks excluded.
IpInstance verification_instance(const Scenario& scenario, Mode mode);

std::vector<Violation> verify_schedule(const Scenario& scenario,
                                       const Schedule& schedule);

}  // namespace pulseil

#endif  // PULSEIL_PIPELINE_HPP_
