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

#include "pulseil/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "pulseil/pipeline.hpp"

namespace pulseil {

ComplexityFit fit_complexity(std::span<const double> sizes,
                             std::span<const double> values) {
  if (sizes.size() != values.size()) {
    throw InvalidInput("fit: sizes and values differ in length");
  }
  if (sizes.size() < 4) throw InvalidInput("fit: need at least 4 sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(sizes[i] > 0.0) || !(values[i] > 0.0)) {
      throw InvalidInput("fit: sizes and values must be positive");
    }
    if (i > 0 && !(sizes[i] > sizes[i - 1])) {
      throw InvalidInput("fit: sizes must be strictly increasing");
    }
  }
  const double n = static_cast<double>(sizes.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double x = std::log(sizes[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double vxx = sxx - sx * sx / n;
  const double vxy = sxy - sx * sy / n;
  const double vyy = syy - sy * sy / n;
  ComplexityFit fit;
  fit.exponent = vxy / vxx;
  fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return fit;
}

unsigned bench_workers_from_env() {
  const char* v = std::getenv("PULSEIL_BENCH_WORKERS");
  if (v == nullptr) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1 || n > 256) return 1;
  return static_cast<unsigned>(n);
}

namespace {

struct RepResult {
  double total_ms = 0.0;
  double prep_ms = 0.0;
  double schedule_ms = 0.0;
  std::size_t looks = 0;
  RunStats stats;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::uint64_t total_ops(const RunStats& s) {
  return s.interleave.iterations + s.backend.build_entries +
         s.backend.node_visits + s.backend.deletion_touches + s.selection_ops +
         s.update_ops;
}

}  // namespace

ScalingReport run_scaling(const ScalingRequest& req) {
  if (req.sizes.size() < 4) {
    throw InvalidInput("bench: a fit needs at least 4 sizes");
  }
  for (std::size_t i = 1; i < req.sizes.size(); ++i) {
    if (req.sizes[i] <= req.sizes[i - 1]) {
      throw InvalidInput("bench: sizes must be strictly increasing");
    }
  }
  if (req.sizes.front() == 0) throw InvalidInput("bench: sizes must be >= 1");
  if (req.reps < 1) throw InvalidInput("bench: need at least 1 repetition");

  ScalingReport report;
  report.config = req.config;
  report.reps = req.reps;
  const std::size_t reps = static_cast<std::size_t>(req.reps);

  for (std::size_t size : req.sizes) {
    // Generate this size's scenarios, in parallel if asked.
    std::vector<Scenario> scenarios(reps);
    {
      std::atomic<std::size_t> next{0};
      std::exception_ptr error;
      std::mutex error_mu;
      auto work = [&] {
        for (std::size_t r = next++; r < reps; r = next++) {
          try {
            ScenarioSpec spec = req.spec;
            spec.task_count = size;
            spec.seed = mix64(req.spec.seed ^ mix64(size)) + r;
            scenarios[r] = generate_scenario(spec);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      };
      const unsigned workers =
          std::max(1u, std::min<unsigned>(req.workers, req.reps));
      std::vector<std::thread> pool;
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
      work();
      for (auto& t : pool) t.join();
      if (error) std::rethrow_exception(error);
    }

    std::vector<RepResult> results(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      RepResult& out = results[r];
      const Schedule s = run_schedule(scenarios[r], req.config, &out.stats);
      out.prep_ms = out.stats.prep_seconds * 1e3;
      out.schedule_ms = out.stats.schedule_seconds * 1e3;
      out.total_ms = out.prep_ms + out.schedule_ms;
      out.looks = s.looks.size();
    }

    ScalingPoint pt;
    pt.size = size;
    std::vector<double> total, prep, sched;
    for (const RepResult& r : results) {
      total.push_back(r.total_ms);
      prep.push_back(r.prep_ms);
      sched.push_back(r.schedule_ms);
      const RunStats& s = r.stats;
      pt.bi_iterations += s.interleave.iterations;
      pt.backend_queries += s.backend.queries;
      pt.backend_deletions += s.backend.deletions;
      pt.backend_visits += s.backend.node_visits;
      pt.build_entries += s.backend.build_entries;
      pt.selection_ops += s.selection_ops;
      pt.update_ops += s.update_ops;
      pt.total_ops += total_ops(s);
      pt.max_bi_iterations =
          std::max(pt.max_bi_iterations, s.interleave.max_iterations);
      pt.bi_bound_violations += s.interleave.bound_violations;
      pt.max_query_visits =
          std::max(pt.max_query_visits, s.backend.max_query_visits);
      pt.max_deletion_touches =
          std::max(pt.max_deletion_touches, s.backend.max_deletion_touches);
      pt.max_selection_ops = std::max(pt.max_selection_ops, s.max_selection_ops);
      pt.max_update_ops = std::max(pt.max_update_ops, s.max_update_ops);
    }
    pt.bi_iterations /= reps;
    pt.backend_queries /= reps;
    pt.backend_deletions /= reps;
    pt.backend_visits /= reps;
    pt.build_entries /= reps;
    pt.selection_ops /= reps;
    pt.update_ops /= reps;
    pt.total_ops /= reps;
    pt.median_ms = median(total);
    pt.median_prep_ms = median(prep);
    pt.median_schedule_ms = median(sched);
    {
      // Looks of the repetition whose time is closest to the median.
      std::size_t best = 0;
      for (std::size_t r = 1; r < reps; ++r) {
        if (std::fabs(results[r].total_ms - pt.median_ms) <
            std::fabs(results[best].total_ms - pt.median_ms)) {
          best = r;
        }
      }
      pt.looks = results[best].looks;
    }
    report.points.push_back(pt);
  }

  std::vector<double> xs, ts, os;
  for (const ScalingPoint& p : report.points) {
    xs.push_back(static_cast<double>(p.size));
    ts.push_back(std::max(p.median_ms, 1e-6));
    os.push_back(static_cast<double>(std::max<std::uint64_t>(p.total_ops, 1)));
  }
  report.time_fit = fit_complexity(xs, ts);
  report.ops_fit = fit_complexity(xs, os);
  return report;
}

namespace {

std::string ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string format_report(const ScalingReport& r) {
  const SchedulerConfig& c = r.config;
  std::string out = "# pulseil-bench v1 mode=";
  out += to_string(c.mode);
  if (c.mode == Mode::kEdbf) {
    out += " prf_rule=";
    out += to_string(c.prf_rule);
  } else {
    out += " disk_rule=";
    out += to_string(c.disk_rule);
    out += " sub_rule=";
    out += to_string(c.sub_rule);
  }
  out += " task_rule=";
  out += to_string(c.task_rule);
  out += " backend=";
  out += to_string(c.backend);
  out += " seed=" + std::to_string(c.seed) + " reps=" + std::to_string(r.reps) +
         "\n";
  out +=
      "size\tmedian_ms\tprep_ms\tschedule_ms\tlooks\tbi_iterations\t"
      "max_bi_iterations\tbi_bound_violations\tqueries\tdeletions\t"
      "node_visits\tmax_query_visits\tmax_deletion_touches\tbuild_entries\t"
      "selection_ops\tupdate_ops\tmax_update_ops\ttotal_ops\n";
  for (const ScalingPoint& p : r.points) {
    out += std::to_string(p.size) + "\t" + ms(p.median_ms) + "\t" +
           ms(p.median_prep_ms) + "\t" + ms(p.median_schedule_ms) + "\t" +
           std::to_string(p.looks) + "\t" + std::to_string(p.bi_iterations) +
           "\t" + std::to_string(p.max_bi_iterations) + "\t" +
           std::to_string(p.bi_bound_violations) + "\t" +
           std::to_string(p.backend_queries) + "\t" +
           std::to_string(p.backend_deletions) + "\t" +
           std::to_string(p.backend_visits) + "\t" +
           std::to_string(p.max_query_visits) + "\t" +
           std::to_string(p.max_deletion_touches) + "\t" +
           std::to_string(p.build_entries) + "\t" +
           std::to_string(p.selection_ops) + "\t" +
           std::to_string(p.update_ops) + "\t" +
           std::to_string(p.max_update_ops) + "\t" +
           std::to_string(p.total_ops) + "\n";
  }
  out += "# time_exponent=" + format_double(r.time_fit.exponent) +
         " time_r2=" + format_double(r.time_fit.r_squared) + "\n";
  out += "# ops_exponent=" + format_double(r.ops_fit.exponent) +
         " ops_r2=" + format_double(r.ops_fit.r_squared) + "\n";
  return out;
}

}  // namespace pulseil
