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

#include "pulseil/pulseil.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "pulseil/bench.hpp"
#include "pulseil/edbf_scheduler.hpp"
#include "pulseil/lp_format.hpp"
#include "pulseil/oracle_compare.hpp"
#include "pulseil/pipeline.hpp"
#include "pulseil/scenario.hpp"
#include "pulseil/schedule_io.hpp"

struct pil_scenario {
  pulseil::Scenario value;
};

struct pil_schedule {
  pulseil::Schedule value;
  pulseil::RunStats stats;
};

namespace {

thread_local std::string g_last_error;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

pil_status fail(pil_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Runs body, mapping exceptions to status codes.
template <typename F>
pil_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const UsageError& e) {
    return fail(PIL_ERR_USAGE, e.what());
  } catch (const pulseil::ResourceLimit& e) {
    return fail(PIL_ERR_LIMIT, e.what());
  } catch (const pulseil::InvalidInput& e) {
    return fail(PIL_ERR_PARSE, e.what());
  } catch (const pulseil::InternalError& e) {
    return fail(PIL_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PIL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PIL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PIL_ERR_INTERNAL, "unknown exception");
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw UsageError(std::string(what) + " must not be NULL");
}

template <typename T>
T pick(const char* text, std::optional<T> (*parse)(std::string_view),
       T fallback, const char* what) {
  if (text == nullptr) return fallback;
  const auto v = parse(text);
  if (!v) throw UsageError(std::string("unknown ") + what + " '" + text + "'");
  return *v;
}

pulseil::SchedulerConfig to_config(const pil_run_options* o) {
  using namespace pulseil;
  SchedulerConfig c;
  if (o == nullptr) return c;
  c.mode = pick(o->mode, parse_mode, c.mode, "mode");
  c.prf_rule = pick(o->prf_rule, parse_prf_rule, c.prf_rule, "PRF rule");
  c.task_rule = pick(o->task_rule, parse_task_rule, c.task_rule, "task rule");
  c.disk_rule = pick(o->disk_rule, parse_disk_rule, c.disk_rule, "disk rule");
  c.sub_rule = pick(o->sub_rule, parse_sub_rule, c.sub_rule, "sub rule");
  c.backend = pick(o->backend, parse_backend_kind, c.backend, "backend");
  c.seed = o->seed;
  return c;
}

void apply_grid(pulseil::GridSpec& g, double eps, double radius) {
  if (eps > 0.0) g.spacing = eps;
  if (radius > 0.0) g.disk_radius = radius;
  g.validate();
}

}  // namespace

extern "C" {

const char* pil_version(void) { return "1.0.0"; }

const char* pil_last_error(void) { return g_last_error.c_str(); }

void pil_string_free(char* s) { std::free(s); }

pil_status pil_scenario_load(const char* path, pil_scenario** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    auto* sc = new pil_scenario;
    try {
      sc->value = pulseil::load_scenario(path);
    } catch (const pulseil::InvalidInput& e) {
      delete sc;
      if (std::string_view(e.what()).find("cannot open") !=
          std::string_view::npos) {
        return fail(PIL_ERR_IO, e.what());
      }
      throw;
    } catch (...) {
      delete sc;
      throw;
    }
    *out = sc;
    return PIL_OK;
  });
}

pil_status pil_scenario_parse(const char* text, pil_scenario** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = nullptr;
    auto sc = std::make_unique<pil_scenario>();
    sc->value = pulseil::parse_scenario(text);
    *out = sc.release();
    return PIL_OK;
  });
}

void pil_generate_options_init(pil_generate_options* o) {
  if (o == nullptr) return;
  const pulseil::ScenarioSpec d;
  o->task_count = d.task_count;
  o->seed = 0;
  o->keep_unschedulable = 0;
  o->grid_eps = 0.0;
  o->disk_radius = 0.0;
}

pil_status pil_scenario_generate(const pil_generate_options* o,
                                 pil_scenario** out) {
  return guarded([&] {
    need(o, "options");
    need(out, "out");
    *out = nullptr;
    pulseil::ScenarioSpec spec;
    spec.task_count = o->task_count;
    spec.seed = o->seed;
    spec.keep_unschedulable = o->keep_unschedulable != 0;
    apply_grid(spec.grid, o->grid_eps, o->disk_radius);
    auto sc = std::make_unique<pil_scenario>();
    sc->value = pulseil::generate_scenario(spec);
    *out = sc.release();
    return PIL_OK;
  });
}

pil_status pil_scenario_dump(const pil_scenario* sc, char** out) {
  return guarded([&] {
    need(sc, "scenario");
    need(out, "out");
    *out = copy_out(pulseil::dump_scenario(sc->value));
    return PIL_OK;
  });
}

pil_status pil_scenario_set_grid(pil_scenario* sc, double eps, double radius) {
  return guarded([&] {
    need(sc, "scenario");
    pulseil::GridSpec g = sc->value.grid;
    apply_grid(g, eps, radius);
    sc->value.grid = g;
    return PIL_OK;
  });
}

size_t pil_scenario_task_count(const pil_scenario* sc) {
  return sc == nullptr ? 0 : sc->value.tasks.size();
}

void pil_scenario_free(pil_scenario* sc) { delete sc; }

pil_status pil_availability_dump(const pil_scenario* sc, char** out) {
  return guarded([&] {
    using namespace pulseil;
    need(sc, "scenario");
    need(out, "out");
    const Scenario& s = sc->value;
    const AvailabilityTable t = AvailabilityTable::build(s.tasks, s.prfs, s.radar);
    std::string text = "# pulseil-availability v1 tasks=" +
                       std::to_string(s.tasks.size()) +
                       " prfs=" + std::to_string(s.prfs.size()) +
                       " n_intlv=" + std::to_string(s.radar.max_interleave) +
                       "\ntask\tprf\tf_r\tR_a\tf_a\ttrackable\tA_l\tA_r\n";
    for (TaskIndex i = 0; i < s.tasks.size(); ++i) {
      for (PrfIndex p = 0; p < s.prfs.size(); ++p) {
        const Availability& a = t.at(i, p);
        text += std::to_string(s.tasks[i].id) + "\t" + std::to_string(p) + "\t" +
                format_double(s.prfs[p].frequency) + "\t" +
                format_double(a.ambiguous_range) + "\t" +
                format_double(ambiguous_frequency(s.tasks[i], s.prfs[p], s.radar)) +
                "\t" + (a.trackable ? "1" : "0") + "\t" +
                std::to_string(a.left) + "\t" + std::to_string(a.right) + "\n";
      }
    }
    *out = copy_out(text);
    return PIL_OK;
  });
}

pil_status pil_disks_dump(const pil_scenario* sc, char** out) {
  return guarded([&] {
    using namespace pulseil;
    need(sc, "scenario");
    need(out, "out");
    const Scenario& s = sc->value;
    const AvailabilityTable t = AvailabilityTable::build(s.tasks, s.prfs, s.radar);
    const DiskCatalog cat = DiskCatalog::build(t, s.tasks, s.grid);
    std::string text = "# pulseil-disks v1 grid=" + format_double(s.grid.spacing) +
                       "," + format_double(s.grid.disk_radius) +
                       " disks=" + std::to_string(cat.disk_count()) +
                       " memberships=" + std::to_string(cat.membership_count()) +
                       "\ndisk\tprf\tf_r\tiu\tiv\tu\tv\tcount\ttasks\n";
    for (const Disk& d : cat.disks()) {
      text += std::to_string(d.id) + "\t" + std::to_string(d.prf) + "\t" +
              format_double(s.prfs[d.prf].frequency) + "\t" +
              std::to_string(d.grid.iu) + "\t" + std::to_string(d.grid.iv) +
              "\t" + format_double(d.center.u) + "\t" +
              format_double(d.center.v) + "\t" +
              std::to_string(d.tasks.size()) + "\t";
      for (std::size_t k = 0; k < d.tasks.size(); ++k) {
        if (k > 0) text += ',';
        text += std::to_string(s.tasks[d.tasks[k]].id);
      }
      text += '\n';
    }
    *out = copy_out(text);
    return PIL_OK;
  });
}

void pil_run_options_init(pil_run_options* o) {
  if (o == nullptr) return;
  *o = pil_run_options{};
}

pil_status pil_schedule_run(const pil_scenario* sc, const pil_run_options* o,
                            pil_schedule** out) {
  return guarded([&] {
    need(sc, "scenario");
    need(out, "out");
    *out = nullptr;
    const pulseil::SchedulerConfig cfg = to_config(o);
    auto s = std::make_unique<pil_schedule>();
    s->value = pulseil::run_schedule(sc->value, cfg, &s->stats);
    *out = s.release();
    return PIL_OK;
  });
}

pil_status pil_schedule_write(const pil_schedule* s, const pil_scenario* sc,
                              char** out) {
  return guarded([&] {
    need(s, "schedule");
    need(sc, "scenario");
    need(out, "out");
    *out = copy_out(pulseil::write_schedule(s->value, sc->value));
    return PIL_OK;
  });
}

pil_status pil_schedule_parse(const pil_scenario* sc, const char* text,
                              pil_schedule** out) {
  return guarded([&] {
    need(sc, "scenario");
    need(text, "text");
    need(out, "out");
    *out = nullptr;
    auto s = std::make_unique<pil_schedule>();
    s->value = pulseil::parse_schedule(text, sc->value);
    *out = s.release();
    return PIL_OK;
  });
}

pil_status pil_schedule_summary_get(const pil_schedule* s,
                                    const pil_scenario* sc,
                                    pil_schedule_summary* out) {
  return guarded([&] {
    need(s, "schedule");
    need(sc, "scenario");
    need(out, "out");
    const auto dwells =
        pulseil::look_dwells(sc->value.prfs, sc->value.radar);
    out->looks = s->value.looks.size();
    out->tasks = s->value.scheduled_task_count();
    out->unschedulable = s->value.unschedulable.size();
    out->objective = s->value.objective(dwells);
    out->prep_seconds = s->stats.prep_seconds;
    out->schedule_seconds = s->stats.schedule_seconds;
    out->max_interleave_iterations = s->stats.interleave.max_iterations;
    out->interleave_bound_violations = s->stats.interleave.bound_violations;
    return PIL_OK;
  });
}

pil_status pil_schedule_unschedulable_report(const pil_schedule* s,
                                             const pil_scenario* sc,
                                             char** out) {
  return guarded([&] {
    need(s, "schedule");
    need(sc, "scenario");
    need(out, "out");
    std::string text;
    for (pulseil::TaskIndex t : s->value.unschedulable) {
      text += "unschedulable task " + std::to_string(sc->value.tasks[t].id) +
              ": not trackable with any PRF\n";
    }
    *out = copy_out(text);
    return PIL_OK;
  });
}

pil_status pil_schedule_check(const pil_scenario* sc, const pil_schedule* s,
                              size_t* violations, char** report) {
  return guarded([&] {
    need(sc, "scenario");
    need(s, "schedule");
    need(violations, "violations");
    const auto found = pulseil::verify_schedule(sc->value, s->value);
    *violations = found.size();
    if (report != nullptr) {
      std::string text;
      for (const auto& v : found) text += v.constraint + ": " + v.detail + "\n";
      *report = copy_out(text);
    }
    return PIL_OK;
  });
}

void pil_schedule_free(pil_schedule* s) { delete s; }

pil_status pil_debug_dump(const pil_scenario* sc, const pil_run_options* o,
                          char** out) {
  return guarded([&] {
    using namespace pulseil;
    need(sc, "scenario");
    need(out, "out");
    const SchedulerConfig cfg = to_config(o);
    const Scenario& s = sc->value;
    const AvailabilityTable t = AvailabilityTable::build(s.tasks, s.prfs, s.radar);
    const TaskPriorities pri(cfg.task_rule, s.tasks, t, cfg.seed);
    std::string text = "# pulseil-debug v1 backend=";
    text += to_string(cfg.backend);
    text += " task_rule=";
    text += to_string(cfg.task_rule);
    text += "\n";
    for (PrfIndex p = 0; p < s.prfs.size(); ++p) {
      std::vector<BackendItem> items;
      for (TaskIndex i : t.tasks_of(p)) {
        const Availability& a = t.at(i, p);
        items.push_back({i, a.left, a.right, pri.key(i, p)});
      }
      text += "prf " + std::to_string(p) + " f_r=" +
              format_double(s.prfs[p].frequency) +
              " tasks=" + std::to_string(items.size()) + "\n";
      const auto backend = make_backend(cfg.backend, items, t.max_interleave());
      std::string body = backend->dump();
      std::size_t pos = 0;
      while (pos < body.size()) {
        std::size_t nl = body.find('\n', pos);
        if (nl == std::string::npos) nl = body.size();
        text += "  " + body.substr(pos, nl - pos) + "\n";
        pos = nl + 1;
      }
    }
    *out = copy_out(text);
    return PIL_OK;
  });
}

pil_status pil_export_lp(const pil_scenario* sc, const char* mode, int sscfl,
                         char** out) {
  return guarded([&] {
    using namespace pulseil;
    need(sc, "scenario");
    need(out, "out");
    const Mode m = pick(mode, parse_mode, Mode::kEdbf, "mode");
    const Scenario& s = sc->value;
    const AvailabilityTable t = AvailabilityTable::build(s.tasks, s.prfs, s.radar);
    const auto dwells = look_dwells(s.prfs, s.radar);
    if (!t.unschedulable().empty()) {
      return fail(PIL_ERR_UNSCHEDULABLE,
                  std::to_string(t.unschedulable().size()) +
                      " task(s) are not trackable with any PRF; the program "
                      "has no feasible solution");
    }
    const IpInstance inst =
        m == Mode::kEdbf
            ? IpInstance::edbf(t, dwells)
            : IpInstance::sdbf(t, DiskCatalog::build(t, s.tasks, s.grid)
                                      .deduplicated(),
                               dwells);
    *out = copy_out(export_lp(inst, sscfl != 0));
    return PIL_OK;
  });
}

pil_status pil_oracle_compare(const pil_scenario* sc, const char* mode,
                              const char* backend, uint64_t seed, char** out) {
  return guarded([&] {
    using namespace pulseil;
    need(sc, "scenario");
    need(out, "out");
    const std::string m = mode == nullptr ? "all" : mode;
    const BackendKind b =
        pick(backend, parse_backend_kind, BackendKind::kRangeTree, "backend");
    std::vector<SchedulerConfig> configs;
    bool oracle = true;
    if (m == "edbf" || m == "all" || m == "heuristic-only") {
      const auto c = all_configs(Mode::kEdbf, b, seed);
      configs.insert(configs.end(), c.begin(), c.end());
    }
    if (m == "sdbf" || m == "all" || m == "heuristic-only") {
      const auto c = all_configs(Mode::kSdbf, b, seed);
      configs.insert(configs.end(), c.begin(), c.end());
    }
    if (configs.empty()) throw UsageError("unknown oracle mode '" + m + "'");
    if (m == "heuristic-only") oracle = false;
    const OracleComparison cmp = oracle_compare(sc->value, configs, oracle);
    *out = copy_out(format_comparison(cmp));
    for (const OracleRow& r : cmp.rows) {
      if (!r.feasible) {
        return fail(PIL_ERR_INTERNAL,
                    "heuristic " + config_label(r.config) +
                        " produced an infeasible schedule");
      }
    }
    return PIL_OK;
  });
}

void pil_bench_options_init(pil_bench_options* o) {
  if (o == nullptr) return;
  *o = pil_bench_options{};
  o->reps = 5;
}

pil_status pil_bench(const pil_bench_options* o, char** out) {
  return guarded([&] {
    using namespace pulseil;
    need(o, "options");
    need(out, "out");
    if (o->size_count > 0) need(o->sizes, "sizes");
    ScalingRequest req;
    req.config = to_config(&o->run);
    req.sizes.assign(o->sizes, o->sizes + o->size_count);
    req.reps = o->reps;
    req.workers = o->workers == 0 ? bench_workers_from_env() : o->workers;
    req.spec.seed = o->seed;
    apply_grid(req.spec.grid, o->grid_eps, o->disk_radius);
    ScalingReport report;
    try {
      report = run_scaling(req);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());  // sizes and reps come from the caller
    }
    *out = copy_out(format_report(report));
    return PIL_OK;
  });
}

}  // extern "C"
