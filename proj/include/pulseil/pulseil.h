/* Copyright 2026 The pulseil Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the pulse-interleaving scheduler.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call returns a pil_status; on failure pil_last_error() holds a message for
 * the calling thread. Strings returned through char** are heap copies owned
 * by the caller and released with pil_string_free().
 */

#ifndef PULSEIL_PULSEIL_H_
#define PULSEIL_PULSEIL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PULSEIL_BUILDING_LIBRARY)
#define PIL_API __attribute__((visibility("default")))
#else
#define PIL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pil_status {
  PIL_OK = 0,
  PIL_ERR_USAGE = 1,         /* bad argument or option value */
  PIL_ERR_UNSCHEDULABLE = 2, /* no feasible schedule for the input */
  PIL_ERR_INTERNAL = 3,      /* invariant violation; a bug */
  PIL_ERR_IO = 4,            /* file could not be read or written */
  PIL_ERR_PARSE = 5,         /* malformed or invalid input text */
  PIL_ERR_LIMIT = 6          /* search or size limit exceeded */
} pil_status;

typedef struct pil_scenario pil_scenario;
typedef struct pil_schedule pil_schedule;

PIL_API const char* pil_version(void);
PIL_API const char* pil_last_error(void);
PIL_API void pil_string_free(char* s);

/* Scenarios. */

PIL_API pil_status pil_scenario_load(const char* path, pil_scenario** out);
PIL_API pil_status pil_scenario_parse(const char* json_text, pil_scenario** out);

typedef struct pil_generate_options {
  size_t task_count;
  uint64_t seed;
  int keep_unschedulable;
  double grid_eps;    /* <= 0 keeps the default */
  double disk_radius; /* <= 0 keeps the default */
} pil_generate_options;

PIL_API void pil_generate_options_init(pil_generate_options* opts);
PIL_API pil_status pil_scenario_generate(const pil_generate_options* opts,
                                         pil_scenario** out);
PIL_API pil_status pil_scenario_dump(const pil_scenario* sc, char** out);
/* Overrides the subarray grid; a value <= 0 keeps the current one. */
PIL_API pil_status pil_scenario_set_grid(pil_scenario* sc, double grid_eps,
                                         double disk_radius);
PIL_API size_t pil_scenario_task_count(const pil_scenario* sc);
PIL_API void pil_scenario_free(pil_scenario* sc);

/* Tabular dumps: one row per task-PRF pair, and the disk catalog. */
PIL_API pil_status pil_availability_dump(const pil_scenario* sc, char** out);
PIL_API pil_status pil_disks_dump(const pil_scenario* sc, char** out);

/* Scheduling. String fields use the command-line names; NULL selects the
 * default (edbf, G, SAR, GD, SD, rangetree). */
typedef struct pil_run_options {
  const char* mode;
  const char* prf_rule;
  const char* task_rule;
  const char* disk_rule;
  const char* sub_rule;
  const char* backend;
  uint64_t seed;
} pil_run_options;

PIL_API void pil_run_options_init(pil_run_options* opts);
PIL_API pil_status pil_schedule_run(const pil_scenario* sc,
                                    const pil_run_options* opts,
                                    pil_schedule** out);
PIL_API pil_status pil_schedule_write(const pil_schedule* s,
                                      const pil_scenario* sc, char** out);
PIL_API pil_status pil_schedule_parse(const pil_scenario* sc, const char* text,
                                      pil_schedule** out);

typedef struct pil_schedule_summary {
  size_t looks;
  size_t tasks;
  size_t unschedulable;
  double objective;
  double prep_seconds;     /* zero for parsed schedules */
  double schedule_seconds; /* zero for parsed schedules */
  uint64_t max_interleave_iterations;
  uint64_t interleave_bound_violations;
} pil_schedule_summary;

PIL_API pil_status pil_schedule_summary_get(const pil_schedule* s,
                                            const pil_scenario* sc,
                                            pil_schedule_summary* out);
/* One line per unschedulable task id, empty when all were scheduled. */
PIL_API pil_status pil_schedule_unschedulable_report(const pil_schedule* s,
                                                     const pil_scenario* sc,
                                                     char** out);
/* Checks every program constraint. *violations receives the count and
 * *report one line per violation. */
PIL_API pil_status pil_schedule_check(const pil_scenario* sc,
                                      const pil_schedule* s,
                                      size_t* violations, char** report);
PIL_API void pil_schedule_free(pil_schedule* s);

/* Indented view of each PRF's fresh selection structure. */
PIL_API pil_status pil_debug_dump(const pil_scenario* sc,
                                  const pil_run_options* opts, char** out);

/* LP export; mode is "edbf" or "sdbf", sscfl selects the relaxed form. */
PIL_API pil_status pil_export_lp(const pil_scenario* sc, const char* mode,
                                 int sscfl, char** out);

/* mode: "edbf", "sdbf", "all" or "heuristic-only" (all, without the exact
 * solver). PIL_ERR_LIMIT when the instance is too large for the oracle. */
PIL_API pil_status pil_oracle_compare(const pil_scenario* sc, const char* mode,
                                      const char* backend, uint64_t seed,
                                      char** out);

typedef struct pil_bench_options {
  pil_run_options run;
  const size_t* sizes;
  size_t size_count;
  int reps;
  unsigned workers; /* 0 reads PULSEIL_BENCH_WORKERS */
  uint64_t seed;    /* scenario generator seed */
  double grid_eps;
  double disk_radius;
} pil_bench_options;

PIL_API void pil_bench_options_init(pil_bench_options* opts);
PIL_API pil_status pil_bench(const pil_bench_options* opts, char** out);

#ifdef __cplusplus
}
#endif

#endif /* PULSEIL_PULSEIL_H_ */
