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

#include "pulseil/oracle_compare.hpp"

#include "pulseil/pipeline.hpp"

namespace pulseil {

std::vector<SchedulerConfig> all_configs(Mode mode, BackendKind backend,
                                         std::uint64_t seed) {
  std::vector<SchedulerConfig> out;
  SchedulerConfig base;
  base.mode = mode;
  base.backend = backend;
  base.seed = seed;
  if (mode == Mode::kEdbf) {
    for (PrfRule p : kAllPrfRules) {
      for (TaskRule t : kAllTaskRules) {
        SchedulerConfig c = base;
        c.prf_rule = p;
        c.task_rule = t;
        out.push_back(c);
      }
    }
  } else {
    for (DiskRule d : kAllDiskRules) {
      for (SubRule s : kAllSubRules) {
        for (TaskRule t : kAllTaskRules) {
          SchedulerConfig c = base;
          c.disk_rule = d;
          c.sub_rule = s;
          c.task_rule = t;
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

std::string config_label(const SchedulerConfig& c) {
  std::string out(to_string(c.mode));
  out += ':';
  if (c.mode == Mode::kEdbf) {
    out += to_string(c.prf_rule);
  } else {
    out += to_string(c.disk_rule);
    out += '+';
    out += to_string(c.sub_rule);
  }
  out += '/';
  out += to_string(c.task_rule);
  return out;
}

namespace {

ExactResult exact_for(const Scenario& sc, Mode mode, const ExactLimits& limits) {
  const AvailabilityTable table =
      AvailabilityTable::build(sc.tasks, sc.prfs, sc.radar);
  const std::vector<double> dwells = look_dwells(sc.prfs, sc.radar);
  InstanceOptions opts;
  opts.exclude_unschedulable = true;
  if (mode == Mode::kEdbf) {
    return solve_exact(IpInstance::edbf(table, dwells, opts), limits);
  }
  // Duplicate and subset disks cannot improve the optimum.
  const DiskCatalog catalog =
      DiskCatalog::build(table, sc.tasks, sc.grid).deduplicated();
  return solve_exact(IpInstance::sdbf(table, catalog, dwells, opts), limits);
}

}  // namespace

OracleComparison oracle_compare(const Scenario& sc,
                                std::span<const SchedulerConfig> configs,
                                bool use_oracle, const ExactLimits& limits) {
  OracleComparison out;
  if (use_oracle) {
    const bool too_big = sc.tasks.size() > limits.max_tasks ||
                         sc.prfs.size() > limits.max_prfs ||
                         sc.radar.max_interleave > limits.max_interleave;
    if (too_big) {
      throw ResourceLimit(
          "oracle-compare: instance exceeds the exact solver limits (tasks <= " +
          std::to_string(limits.max_tasks) + ", PRFs <= " +
          std::to_string(limits.max_prfs) + ", N_intlv <= " +
          std::to_string(limits.max_interleave) +
          "); rerun with --mode heuristic-only");
    }
  }
  std::optional<IpInstance> edbf_inst, sdbf_inst;
  for (const SchedulerConfig& cfg : configs) {
    std::optional<ExactResult>& exact =
        cfg.mode == Mode::kEdbf ? out.edbf_exact : out.sdbf_exact;
    std::optional<IpInstance>& inst =
        cfg.mode == Mode::kEdbf ? edbf_inst : sdbf_inst;
    if (use_oracle && !exact) exact = exact_for(sc, cfg.mode, limits);
    if (!inst) inst = verification_instance(sc, cfg.mode);

    const Schedule s = run_schedule(sc, cfg);
    OracleRow row;
    row.config = cfg;
    row.objective = s.objective(inst->prf_dwell());
    row.looks = s.looks.size();
    row.violations = check_feasible(s, *inst).size();
    row.feasible = row.violations == 0;
    if (exact && exact->feasible) {
      if (exact->objective > 0.0) {
        row.ratio = row.objective / exact->objective;
      } else if (row.objective == 0.0) {
        row.ratio = 1.0;
      }
    }
    out.rows.push_back(row);
  }
  return out;
}

std::string format_comparison(const OracleComparison& c) {
  std::string out = "# pulseil-oracle v1\n";
  auto exact_line = [&](const char* mode, const std::optional<ExactResult>& e) {
    if (!e) return;
    out += "# optimal mode=";
    out += mode;
    if (e->feasible) {
      out += " objective=" + format_double(e->objective) +
             " looks=" + std::to_string(e->schedule.looks.size());
    } else {
      out += " infeasible";
    }
    out += " nodes=" + std::to_string(e->nodes) + "\n";
  };
  exact_line("edbf", c.edbf_exact);
  exact_line("sdbf", c.sdbf_exact);
  out += "config\tobjective\tlooks\tratio\tfeasible\n";
  for (const OracleRow& r : c.rows) {
    out += config_label(r.config) + "\t" + format_double(r.objective) + "\t" +
           std::to_string(r.looks) + "\t" +
           (r.ratio ? format_double(*r.ratio) : std::string("-")) + "\t" +
           (r.feasible ? "yes" : "no(" + std::to_string(r.violations) + ")") +
           "\n";
  }
  return out;
}

}  // namespace pulseil
