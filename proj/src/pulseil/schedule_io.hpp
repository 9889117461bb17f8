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

// Line-oriented schedule files. Tasks are written by external id; the
// backend and timings are deliberately absent so that equal schedules give
// equal bytes.
//
//   # pulseil-schedule v1 mode=edbf prf_rule=G task_rule=SAR seed=0
//   look 0 prf=3 f_r=12500 dwell=0.00512
//   task 17 slot 1
//   unschedulable 9
//   summary looks=1 tasks=1 unschedulable=1 objective=0.00512
//
// Subarray-level files add disk_rule, sub_rule and grid=eps,r to the header
// and disk=, center=u,v and grid=iu,iv to each look line.

#ifndef PULSEIL_SCHEDULE_IO_HPP_
#define PULSEIL_SCHEDULE_IO_HPP_

#include <string>
#include <string_view>

#include "pulseil/scenario.hpp"
#include "pulseil/schedule.hpp"

namespace pulseil {

inline constexpr std::string_view kScheduleTag = "# pulseil-schedule v1";

std::string write_schedule(const Schedule& schedule, const Scenario& scenario);

// Resolves task ids against the scenario. Throws InvalidInput on malformed
// text, unknown ids or PRF indices out of range.
Schedule parse_schedule(std::string_view text, const Scenario& scenario);

}  // namespace pulseil

#endif  // PULSEIL_SCHEDULE_IO_HPP_
