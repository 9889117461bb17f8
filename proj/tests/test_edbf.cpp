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

#include <set>

#include "doctest.h"
#include "pulseil/edbf_scheduler.hpp"
#include "pulseil/exact_solver.hpp"
#include "pulseil/oracle_compare.hpp"
#include "pulseil/pipeline.hpp"
#include "pulseil/schedule_io.hpp"
#include "support/oracles.hpp"

using namespace pulseil;
using pulseil_test::make_task;

namespace {

// Radar with 1 km slots and four interleaving positions.
RadarConfig km_radar() {
  RadarConfig cfg;
  cfg.pulse_width = 2000.0 / cfg.wave_speed;
  cfg.max_interleave = 4;
  return cfg;
}

PrfConfig clear_prf(double f) { return PrfConfig{f, 0, 0, 2500, 2500}; }

// Six tasks: task 1 works with both PRFs, tasks 2..6 with the 10 kHz PRF only.
Scenario greedy_split() {
  Scenario sc;
  sc.radar = km_radar();
  sc.prfs = {clear_prf(10000), clear_prf(13000)};
  sc.tasks.push_back(make_task(1, 5500, 5000, sc.radar));
  for (int i = 2; i <= 6; ++i) {
    sc.tasks.push_back(make_task(i, 5500 + 100.0 * i, 15000, sc.radar));
  }
  sc.normalize();
  return sc;
}

SchedulerConfig edbf(PrfRule p, TaskRule t, std::uint64_t seed = 0) {
  SchedulerConfig c;
  c.mode = Mode::kEdbf;
  c.prf_rule = p;
  c.task_rule = t;
  c.seed = seed;
  return c;
}

double dwell_sum(const Scenario& sc, const Schedule& s) {
  return s.objective(look_dwells(sc.prfs, sc.radar));
}

}  // namespace

TEST_CASE("single task: one look at its lowest tied PRF, slot 1") {
  Scenario sc;
  sc.tasks.push_back(make_task(1, 42000, 6000, sc.radar, 10, 10));
  sc.normalize();
  const auto table = AvailabilityTable::build(sc.tasks, sc.prfs, sc.radar);
  REQUIRE(!table.prfs_of(0).empty());
  const Schedule s = run_schedule(sc, edbf(PrfRule::kGreedy, TaskRule::kSar));
  REQUIRE(s.looks.size() == 1);
  CHECK(s.looks[0].prf == table.prfs_of(0)[0]);
  REQUIRE(s.looks[0].placements.size() == 1);
  CHECK(s.looks[0].placements[0].slot == 1);
  CHECK(dwell_sum(sc, s) ==
        doctest::Approx(look_dwell(sc.prfs[table.prfs_of(0)[0]], sc.radar)));
  CHECK(verify_schedule(sc, s).empty());
}

TEST_CASE("non-interleavable tasks take one look each") {
  Scenario sc;
  sc.radar = km_radar();
  // R_u = 3500 m: clear range [1000, 2500], so A_l = 0 and A_r = 1.
  sc.prfs = {clear_prf(sc.radar.wave_speed / 7000.0)};
  for (int i = 1; i <= 5; ++i) {
    sc.tasks.push_back(make_task(i, 1800 + 10.0 * i, 5000, sc.radar));
  }
  sc.normalize();
  const auto table = AvailabilityTable::build(sc.tasks, sc.prfs, sc.radar);
  for (TaskIndex i = 0; i < 5; ++i) {
    REQUIRE(table.at(i, 0).trackable);
    REQUIRE(table.at(i, 0).left == 0);
    REQUIRE(table.at(i, 0).right == 1);
  }
  for (PrfRule p : kAllPrfRules) {
    for (TaskRule t : kAllTaskRules) {
      const Schedule s = run_schedule(sc, edbf(p, t, 3));
      CHECK(s.looks.size() == 5);
      for (const auto& look : s.looks) CHECK(look.placements.size() == 1);
      CHECK(verify_schedule(sc, s).empty());
    }
  }
}

TEST_CASE("greedy PRF choice beats reverse greedy on a crafted instance") {
  const Scenario sc = greedy_split();
  const auto table = AvailabilityTable::build(sc.tasks, sc.prfs, sc.radar);
  REQUIRE(table.prfs_of(0).size() == 2);
  for (TaskIndex i = 1; i < 6; ++i) {
    REQUIRE(table.prfs_of(i).size() == 1);
    REQUIRE(table.prfs_of(i)[0] == 0);
  }
  for (TaskIndex i = 0; i < 6; ++i) {
    REQUIRE(table.at(i, 0).left == 4);
    REQUIRE(table.at(i, 0).right == 4);
  }
  const Schedule g = run_schedule(sc, edbf(PrfRule::kGreedy, TaskRule::kSar));
  const Schedule rg =
      run_schedule(sc, edbf(PrfRule::kReverseGreedy, TaskRule::kSar));
  CHECK(verify_schedule(sc, g).empty());
  CHECK(verify_schedule(sc, rg).empty());
  CHECK(g.looks.size() == 2);
  CHECK(rg.looks.size() == 3);
  CHECK(rg.looks[0].prf == 1);

  const auto exact = solve_exact(verification_instance(sc, Mode::kEdbf));
  REQUIRE(exact.feasible);
  const auto dwells = look_dwells(sc.prfs, sc.radar);
  CHECK(exact.objective == doctest::Approx(2 * dwells[0]));
  CHECK(dwell_sum(sc, g) == doctest::Approx(exact.objective));
  CHECK(dwell_sum(sc, rg) == doctest::Approx(2 * dwells[0] + dwells[1]));
  CHECK(dwell_sum(sc, rg) > exact.objective);
}

TEST_CASE("PRF rules: greedy takes the largest T_p, reverse greedy the smallest") {
  Scenario sc;
  sc.radar = km_radar();
  sc.radar.max_interleave = 1;
  sc.prfs = {clear_prf(10000), clear_prf(13000)};
  // Five tasks for the 10 kHz PRF only, two for the 13 kHz PRF only.
  for (int i = 1; i <= 5; ++i) sc.tasks.push_back(make_task(i, 5500, 15000, sc.radar));
  for (int i = 6; i <= 7; ++i) sc.tasks.push_back(make_task(i, 5500, 18500, sc.radar));
  sc.normalize();
  const auto table = AvailabilityTable::build(sc.tasks, sc.prfs, sc.radar);
  REQUIRE(table.tasks_of(0).size() == 5);
  REQUIRE(table.tasks_of(1).size() == 2);
  CHECK(run_schedule(sc, edbf(PrfRule::kGreedy, TaskRule::kSar)).looks[0].prf == 0);
  CHECK(run_schedule(sc, edbf(PrfRule::kReverseGreedy, TaskRule::kSar)).looks[0].prf == 1);

  SUBCASE("single nonempty PRF") {
    Scenario one = sc;
    one.tasks.resize(5);
    for (PrfRule p : kAllPrfRules) {
      const Schedule s = run_schedule(one, edbf(p, TaskRule::kSar, 8));
      for (const auto& look : s.looks) CHECK(look.prf == 0);
    }
  }
  SUBCASE("random PRF sequence is reproducible") {
    std::set<std::vector<PrfIndex>> seen;
    for (int rep = 0; rep < 3; ++rep) {
      const Schedule s = run_schedule(sc, edbf(PrfRule::kRandom, TaskRule::kSar, 42));
      std::vector<PrfIndex> seq;
      for (const auto& look : s.looks) seq.push_back(look.prf);
      seen.insert(seq);
    }
    CHECK(seen.size() == 1);
  }
}

TEST_CASE("task rules") {
  RadarConfig cfg = km_radar();
  cfg.max_interleave = 8;
  const std::vector<PrfConfig> prfs = {clear_prf(10000), clear_prf(13000),
                                       clear_prf(9000)};
  SUBCASE("SAR prefers the nearer ambiguous range, LAR the farther") {
    const std::vector<TrackTask> tasks = {make_task(1, 4000, 5000, cfg),
                                          make_task(2, 9000, 5000, cfg)};
    const auto table = AvailabilityTable::build(tasks, prfs, cfg);
    REQUIRE(table.at(0, 0).trackable);
    REQUIRE(table.at(1, 0).trackable);
    const TaskPriorities sar(TaskRule::kSar, tasks, table, 0);
    const TaskPriorities lar(TaskRule::kLar, tasks, table, 0);
    CHECK(outranks(sar.key(0, 0), 0, sar.key(1, 0), 1));
    CHECK(outranks(lar.key(1, 0), 1, lar.key(0, 0), 0));
  }
  SUBCASE("SAP prefers the task with fewer PRFs") {
    const std::vector<TrackTask> tasks = {make_task(1, 5500, 5000, cfg),
                                          make_task(2, 5500, 25000, cfg)};
    const auto table = AvailabilityTable::build(tasks, prfs, cfg);
    REQUIRE(table.prfs_of(0).size() == 3);
    REQUIRE(table.prfs_of(1).size() == 1);
    const TaskPriorities sap(TaskRule::kSap, tasks, table, 0);
    CHECK(outranks(sap.key(1, 0), 1, sap.key(0, 0), 0));
  }
  SUBCASE("SLA prefers the smaller leftward sum") {
    const std::vector<PrfConfig> one = {clear_prf(10000)};
    const std::vector<TrackTask> tasks = {make_task(1, 3500, 5000, cfg),
                                          make_task(2, 8500, 5000, cfg)};
    const auto table = AvailabilityTable::build(tasks, one, cfg);
    REQUIRE(table.at(0, 0).left == 2);
    REQUIRE(table.at(1, 0).left == 7);
    const TaskPriorities sla(TaskRule::kSla, tasks, table, 0);
    CHECK(outranks(sla.key(0, 0), 0, sla.key(1, 0), 1));
    const TaskPriorities sra(TaskRule::kSra, tasks, table, 0);
    CHECK(table.at(1, 0).right < table.at(0, 0).right);
    CHECK(outranks(sra.key(1, 0), 1, sra.key(0, 0), 0));
  }
  SUBCASE("equal priorities fall back to the lower task") {
    const std::vector<TrackTask> tasks = {make_task(1, 5000, 5000, cfg),
                                          make_task(2, 5000, 5000, cfg)};
    const auto table = AvailabilityTable::build(tasks, prfs, cfg);
    const TaskPriorities sar(TaskRule::kSar, tasks, table, 0);
    CHECK(outranks(sar.key(0, 0), 0, sar.key(1, 0), 1));
  }
}

TEST_CASE("every rule combination yields feasible schedules") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    ScenarioSpec spec;
    spec.task_count = 60;
    spec.seed = seed;
    spec.keep_unschedulable = true;
    const Scenario sc = generate_scenario(spec);
    const auto table = AvailabilityTable::build(sc.tasks, sc.prfs, sc.radar);
    for (const SchedulerConfig& cfg : all_configs(Mode::kEdbf, BackendKind::kRangeTree, seed)) {
      CAPTURE(config_label(cfg));
      RunStats stats;
      const Schedule s = run_schedule(sc, cfg, &stats);
      const auto v = verify_schedule(sc, s);
      CHECK(v.empty());
      CHECK(s.unschedulable.size() == table.unschedulable().size());
      CHECK(s.scheduled_task_count() + s.unschedulable.size() == sc.tasks.size());
      for (const auto& look : s.looks) CHECK(!look.placements.empty());
      CHECK(stats.interleave.bound_violations == 0);
      CHECK(stats.interleave.max_iterations <=
            static_cast<std::uint64_t>(2 * sc.radar.max_interleave));
    }
  }
}

TEST_CASE("backends produce the same schedule") {
  ScenarioSpec spec;
  spec.task_count = 120;
  spec.seed = 5;
  const Scenario sc = generate_scenario(spec);
  for (const SchedulerConfig& base : all_configs(Mode::kEdbf, BackendKind::kBrute, 9)) {
    std::string first;
    for (BackendKind kind : kAllBackends) {
      SchedulerConfig cfg = base;
      cfg.backend = kind;
      const std::string text = write_schedule(run_schedule(sc, cfg), sc);
      if (first.empty()) {
        first = text;
      } else {
        CHECK(text == first);
      }
    }
  }
}
