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

// Runtime scaling measurements and log-log complexity fits.

#ifndef PULSEIL_BENCH_HPP_
#define PULSEIL_BENCH_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pulseil/scenario.hpp"
#include "pulseil/schedule.hpp"

namespace pulseil {

struct ComplexityFit {
  double exponent = 0.0;   // least-squares slope of log y against log N
  double r_squared = 0.0;
};

// Needs at least 4 strictly increasing positive sizes and positive values.
ComplexityFit fit_complexity(std::span<const double> sizes,
                             std::span<const double> values);

struct ScalingRequest {
  SchedulerConfig config;        // mode, rules, backend, seed
  std::vector<std::size_t> sizes;
  int reps = 5;
  ScenarioSpec spec;             // task_count and seed are set per run
  unsigned workers = 1;          // scenario generation only; runs are timed alone
};

struct ScalingPoint {
  std::size_t size = 0;
  double median_ms = 0.0;  // preparation plus scheduling
  double median_prep_ms = 0.0;
  double median_schedule_ms = 0.0;
  std::uint64_t looks = 0;  // of the median-time repetition
  // Counters summed over repetitions, then divided by reps.
  std::uint64_t bi_iterations = 0;
  std::uint64_t backend_queries = 0;
  std::uint64_t backend_deletions = 0;
  std::uint64_t backend_visits = 0;
  std::uint64_t build_entries = 0;
  std::uint64_t selection_ops = 0;
  std::uint64_t update_ops = 0;
  std::uint64_t total_ops = 0;
  // Worst single values over repetitions.
  std::uint64_t max_bi_iterations = 0;
  std::uint64_t bi_bound_violations = 0;
  std::uint64_t max_query_visits = 0;
  std::uint64_t max_deletion_touches = 0;
  std::uint64_t max_selection_ops = 0;
  std::uint64_t max_update_ops = 0;
};

struct ScalingReport {
  SchedulerConfig config;
  int reps = 0;
  std::vector<ScalingPoint> points;
  ComplexityFit time_fit;
  ComplexityFit ops_fit;
};

ScalingReport run_scaling(const ScalingRequest& request);

// Tab-separated table with a version header and trailing fit lines.
std::string format_report(const ScalingReport& report);

// PULSEIL_BENCH_WORKERS, or 1 when unset or invalid.
unsigned bench_workers_from_env();

}  // namespace pulseil

#endif  // PULSEIL_BENCH_HPP_
