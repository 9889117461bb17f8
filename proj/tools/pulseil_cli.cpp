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

// pulseil command-line tool. Exit codes: 0 success, 1 usage or input error,
// 2 unschedulable input, 3 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pulseil/pulseil.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnschedulable = 2;
constexpr int kExitInternal = 3;

int exit_code_for(pil_status st) {
  switch (st) {
    case PIL_OK:
      return kExitOk;
    case PIL_ERR_UNSCHEDULABLE:
      return kExitUnschedulable;
    case PIL_ERR_INTERNAL:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

// Thrown to unwind with an exit code after the message was printed.
struct Exit {
  int code;
};

void check(pil_status st) {
  if (st == PIL_OK) return;
  std::cerr << "pulseil: " << pil_last_error() << "\n";
  throw Exit{exit_code_for(st)};
}

// Owns a string handed out by the library.
class Text {
 public:
  Text() = default;
  ~Text() { pil_string_free(p_); }
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  char** out() { return &p_; }
  std::string str() const { return p_ == nullptr ? std::string() : p_; }

 private:
  char* p_ = nullptr;
};

struct ScenarioHandle {
  pil_scenario* p = nullptr;
  ~ScenarioHandle() { pil_scenario_free(p); }
};

struct ScheduleHandle {
  pil_schedule* p = nullptr;
  ~ScheduleHandle() { pil_schedule_free(p); }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (out) out << text;
  if (!out) {
    std::cerr << "pulseil: cannot write " << path << "\n";
    throw Exit{kExitUsage};
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "pulseil: cannot open " << path << "\n";
    throw Exit{kExitUsage};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Options {
  std::string scenario;
  std::string schedule;
  std::string out;
  std::string mode;
  std::string prf_rule = "G";
  std::string task_rule = "SAR";
  std::string disk_rule = "GD";
  std::string sub_rule = "SD";
  std::string backend = "rangetree";
  std::uint64_t seed = 0;
  double grid_eps = 0.0;
  double disk_radius = 0.0;
  bool sscfl = false;
  bool keep_unschedulable = false;
  bool debug_dump = false;
  std::size_t tasks = 100;
  std::vector<std::size_t> sizes;
  int reps = 5;
  unsigned workers = 0;
};

pil_run_options run_options(const Options& o) {
  pil_run_options r;
  pil_run_options_init(&r);
  r.mode = o.mode.empty() ? "edbf" : o.mode.c_str();
  r.prf_rule = o.prf_rule.c_str();
  r.task_rule = o.task_rule.c_str();
  r.disk_rule = o.disk_rule.c_str();
  r.sub_rule = o.sub_rule.c_str();
  r.backend = o.backend.c_str();
  r.seed = o.seed;
  return r;
}

void load(const Options& o, ScenarioHandle& sc) {
  check(pil_scenario_load(o.scenario.c_str(), &sc.p));
  check(pil_scenario_set_grid(sc.p, o.grid_eps, o.disk_radius));
}

int cmd_schedule(const Options& o) {
  ScenarioHandle sc;
  load(o, sc);
  const pil_run_options ro = run_options(o);
  if (o.debug_dump) {
    Text dump;
    check(pil_debug_dump(sc.p, &ro, dump.out()));
    std::cerr << dump.str();
  }
  ScheduleHandle s;
  check(pil_schedule_run(sc.p, &ro, &s.p));
  Text text;
  check(pil_schedule_write(s.p, sc.p, text.out()));
  emit(o.out, text.str());
  pil_schedule_summary sum;
  check(pil_schedule_summary_get(s.p, sc.p, &sum));
  std::ostringstream line;
  line << "looks=" << sum.looks << " tasks=" << sum.tasks
       << " unschedulable=" << sum.unschedulable << " objective=" << sum.objective
       << " prep_ms=" << sum.prep_seconds * 1e3
       << " schedule_ms=" << sum.schedule_seconds * 1e3 << "\n";
  // The summary goes to stderr when the schedule itself is on stdout.
  (o.out.empty() || o.out == "-" ? std::cerr : std::cout) << line.str();
  if (sum.unschedulable > 0) {
    Text report;
    check(pil_schedule_unschedulable_report(s.p, sc.p, report.out()));
    std::cerr << report.str();
    return kExitUnschedulable;
  }
  return kExitOk;
}

int cmd_check(const Options& o) {
  ScenarioHandle sc;
  load(o, sc);
  const std::string text = slurp(o.schedule);
  ScheduleHandle s;
  check(pil_schedule_parse(sc.p, text.c_str(), &s.p));
  std::size_t violations = 0;
  Text report;
  check(pil_schedule_check(sc.p, s.p, &violations, report.out()));
  std::cout << report.str() << "violations=" << violations << "\n";
  return violations == 0 ? kExitOk : kExitUnschedulable;
}

int cmd_oracle(const Options& o) {
  ScenarioHandle sc;
  load(o, sc);
  Text text;
  const pil_status st =
      pil_oracle_compare(sc.p, o.mode.empty() ? "all" : o.mode.c_str(),
                         o.backend.c_str(), o.seed, text.out());
  if (!text.str().empty()) emit(o.out, text.str());
  check(st);
  return kExitOk;
}

int cmd_bench(const Options& o) {
  pil_bench_options b;
  pil_bench_options_init(&b);
  b.run = run_options(o);
  b.sizes = o.sizes.data();
  b.size_count = o.sizes.size();
  b.reps = o.reps;
  b.workers = o.workers;
  b.seed = o.seed;
  b.grid_eps = o.grid_eps;
  b.disk_radius = o.disk_radius;
  Text text;
  check(pil_bench(&b, text.out()));
  emit(o.out, text.str());
  return kExitOk;
}

int cmd_export_lp(const Options& o) {
  ScenarioHandle sc;
  load(o, sc);
  Text text;
  check(pil_export_lp(sc.p, o.mode.empty() ? "edbf" : o.mode.c_str(),
                      o.sscfl ? 1 : 0, text.out()));
  emit(o.out, text.str());
  return kExitOk;
}

int cmd_disks(const Options& o) {
  ScenarioHandle sc;
  load(o, sc);
  Text text;
  check(pil_disks_dump(sc.p, text.out()));
  emit(o.out, text.str());
  return kExitOk;
}

int cmd_availability(const Options& o) {
  ScenarioHandle sc;
  load(o, sc);
  Text text;
  check(pil_availability_dump(sc.p, text.out()));
  emit(o.out, text.str());
  return kExitOk;
}

int cmd_generate(const Options& o) {
  pil_generate_options g;
  pil_generate_options_init(&g);
  g.task_count = o.tasks;
  g.seed = o.seed;
  g.keep_unschedulable = o.keep_unschedulable ? 1 : 0;
  g.grid_eps = o.grid_eps;
  g.disk_radius = o.disk_radius;
  ScenarioHandle sc;
  check(pil_scenario_generate(&g, &sc.p));
  Text text;
  check(pil_scenario_dump(sc.p, text.out()));
  emit(o.out, text.str());
  return kExitOk;
}

void add_rules(CLI::App* c, Options& o) {
  c->add_option("--prf-rule", o.prf_rule, "PRF rule")
      ->check(CLI::IsMember({"G", "RG", "R"}));
  c->add_option("--task-rule", o.task_rule, "task rule")
      ->check(CLI::IsMember({"SAR", "LAR", "R", "SAP", "SLA", "SRA"}));
  c->add_option("--disk-rule", o.disk_rule, "disk rule")
      ->check(CLI::IsMember({"GD", "RGD", "WGD"}));
  c->add_option("--sub-rule", o.sub_rule, "disk tie-break rule")
      ->check(CLI::IsMember({"R", "SD"}));
}

void add_backend(CLI::App* c, Options& o) {
  c->add_option("--backend", o.backend, "selection structure")
      ->check(CLI::IsMember({"brute", "pairwise", "rangetree"}));
}

void add_grid(CLI::App* c, Options& o) {
  c->add_option("--grid-eps", o.grid_eps, "grid spacing (direction cosines)")
      ->check(CLI::PositiveNumber);
  c->add_option("--disk-radius", o.disk_radius, "disk radius (direction cosines)")
      ->check(CLI::PositiveNumber);
}

void add_scenario(CLI::App* c, Options& o) {
  c->add_option("scenario", o.scenario, "scenario file")
      ->required()
      ->check(CLI::ExistingFile);
}

void add_out(CLI::App* c, Options& o) {
  c->add_option("--out,-o", o.out, "output path (default stdout)");
}

void add_seed(CLI::App* c, Options& o) {
  c->add_option("--seed", o.seed, "seed for the random rules");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-interleaving look scheduler for phased-array radar"};
  app.require_subcommand(1);
  Options o;

  auto* schedule = app.add_subcommand("schedule", "schedule a scenario");
  add_scenario(schedule, o);
  schedule->add_option("--mode", o.mode, "beamforming level")
      ->check(CLI::IsMember({"edbf", "sdbf"}));
  add_rules(schedule, o);
  add_backend(schedule, o);
  add_seed(schedule, o);
  add_grid(schedule, o);
  add_out(schedule, o);
  schedule->add_flag("--debug-dump", o.debug_dump,
                     "print the selection structures to stderr");

  auto* checkcmd =
      app.add_subcommand("check", "re-validate a schedule file against its scenario");
  add_scenario(checkcmd, o);
  checkcmd->add_option("schedule", o.schedule, "schedule file")
      ->required()
      ->check(CLI::ExistingFile);
  add_grid(checkcmd, o);

  auto* oracle = app.add_subcommand(
      "oracle-compare", "every heuristic combination against the exact optimum");
  add_scenario(oracle, o);
  oracle->add_option("--mode", o.mode, "which schedulers to compare")
      ->check(CLI::IsMember({"edbf", "sdbf", "all", "heuristic-only"}));
  add_backend(oracle, o);
  add_seed(oracle, o);
  add_grid(oracle, o);
  add_out(oracle, o);

  auto* bench = app.add_subcommand("bench", "runtime scaling over task counts");
  bench->add_option("--mode", o.mode, "beamforming level")
      ->check(CLI::IsMember({"edbf", "sdbf"}));
  add_rules(bench, o);
  add_backend(bench, o);
  add_seed(bench, o);
  add_grid(bench, o);
  add_out(bench, o);
  bench->add_option("--sizes", o.sizes, "task counts, at least 4")
      ->delimiter(',')
      ->required();
  bench->add_option("--reps", o.reps, "repetitions per size")
      ->check(CLI::PositiveNumber);
  bench->add_option("--workers", o.workers,
                    "scenario generation threads (default PULSEIL_BENCH_WORKERS)");

  auto* lp = app.add_subcommand("export-lp", "write the assignment program");
  add_scenario(lp, o);
  lp->add_option("--mode", o.mode, "beamforming level")
      ->check(CLI::IsMember({"edbf", "sdbf"}));
  lp->add_flag("--sscfl", o.sscfl, "facility-location relaxation");
  add_grid(lp, o);
  add_out(lp, o);

  auto* disks = app.add_subcommand("disks", "dump the disk catalog");
  add_scenario(disks, o);
  add_grid(disks, o);
  add_out(disks, o);

  auto* avail = app.add_subcommand("availability", "dump per-PRF availability");
  add_scenario(avail, o);
  add_out(avail, o);

  auto* gen = app.add_subcommand("generate", "write a random scenario");
  gen->add_option("--tasks", o.tasks, "number of tasks");
  add_seed(gen, o);
  add_grid(gen, o);
  add_out(gen, o);
  gen->add_flag("--keep-unschedulable", o.keep_unschedulable,
                "keep tasks no PRF can track");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "pulseil: " << e.what() << "\n\n";
    const CLI::App* sub = nullptr;
    for (const CLI::App* s : app.get_subcommands()) sub = s;
    std::cerr << (sub != nullptr ? sub->help() : app.help());
    return kExitUsage;
  }

  try {
    if (*schedule) return cmd_schedule(o);
    if (*checkcmd) return cmd_check(o);
    if (*oracle) return cmd_oracle(o);
    if (*bench) return cmd_bench(o);
    if (*lp) return cmd_export_lp(o);
    if (*disks) return cmd_disks(o);
    if (*avail) return cmd_availability(o);
    if (*gen) return cmd_generate(o);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitUsage;
}
