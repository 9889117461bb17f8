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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "pulseil/exact_solver.hpp"
#include "pulseil/ip_instance.hpp"
#include "pulseil/lp_format.hpp"
#include "pulseil/pipeline.hpp"
#include "support/oracles.hpp"

using namespace pulseil;
using pulseil_test::make_task;

namespace {

RadarConfig km_radar(int n) {
  RadarConfig cfg;
  cfg.pulse_width = 2000.0 / cfg.wave_speed;  // 1 km slots
  cfg.max_interleave = n;
  return cfg;
}

PrfConfig clear_prf(double f) { return PrfConfig{f, 0, 0, 2500, 2500}; }

struct Fixture {
  RadarConfig radar;
  std::vector<PrfConfig> prfs;
  std::vector<TrackTask> tasks;
  AvailabilityTable table;
  std::vector<double> dwells;

  IpInstance edbf() {
    table = AvailabilityTable::build(tasks, prfs, radar);
    dwells = look_dwells(prfs, radar);
    return IpInstance::edbf(table, dwells);
  }
};

// Three interleavable tasks, all trackable with both PRFs.
Fixture three_tasks() {
  Fixture f;
  f.radar = km_radar(4);
  f.prfs = {clear_prf(10000), clear_prf(13000)};
  for (int i = 0; i < 3; ++i) {
    f.tasks.push_back(make_task(i + 1, 5500 + 100.0 * i, 5000, f.radar));
  }
  return f;
}

ScheduledLook look_on(PrfIndex p, std::vector<Placement> placements) {
  ScheduledLook l;
  l.prf = p;
  l.placements = std::move(placements);
  return l;
}

bool has(const std::vector<Violation>& v, const std::string& c) {
  return std::any_of(v.begin(), v.end(),
                     [&](const Violation& x) { return x.constraint == c; });
}

// Random small scenario within the exact solver's limits.
Scenario small_scenario(std::uint64_t seed, std::size_t tasks) {
  ScenarioSpec spec;
  spec.task_count = tasks;
  spec.seed = seed;
  spec.radar.max_interleave = 2 + static_cast<int>(seed % 3);
  const auto all = default_prf_set();
  spec.prfs.assign(all.begin(), all.begin() + 1 + static_cast<long>(seed % 3));
  spec.cluster_count = 2;
  spec.cluster_radius = 0.05;
  return generate_scenario(spec);
}

}  // namespace

TEST_CASE("element-level instance has N_t copies per PRF") {
  Fixture f = three_tasks();
  const IpInstance inst = f.edbf();
  CHECK(inst.look_count() == 6);
  CHECK(inst.task_count() == 3);
  CHECK(inst.variable_count() == 3 * 6 * 4 + 6);
  CHECK(inst.groups().size() == 2);
  for (const IpGroup& g : inst.groups()) CHECK(g.copies == 3);
  int max_left = 0;
  for (const IpGroup& g : inst.groups()) {
    for (const IpCell& c : g.cells) max_left = std::max<int>(max_left, c.left);
  }
  CHECK(inst.big_m() == 4 + max_left + 1);
}

TEST_CASE("subarray-level instance has one group per surviving disk") {
  Scenario sc;
  sc.radar = km_radar(4);
  sc.prfs = {clear_prf(10000)};
  // Two far-apart tasks: every disk holds exactly one task.
  sc.tasks.push_back(make_task(1, 5500, 5000, sc.radar, 0, 0, {0.0, 0.0}));
  sc.tasks.push_back(make_task(2, 5600, 5000, sc.radar, 0, 0, {0.5, 0.0}));
  sc.normalize();
  const auto table = AvailabilityTable::build(sc.tasks, sc.prfs, sc.radar);
  const DiskCatalog dedup = DiskCatalog::build(table, sc.tasks, sc.grid).deduplicated();
  CHECK(dedup.disk_count() == 2);
  const IpInstance inst = IpInstance::sdbf(table, dedup, look_dwells(sc.prfs, sc.radar));
  CHECK(inst.groups().size() == 2);
  CHECK(inst.look_count() == 2);  // |T_d| = 1 copy each
  CHECK(inst.mode() == Mode::kSdbf);
}

TEST_CASE("unschedulable tasks fail unless excluded") {
  Fixture f = three_tasks();
  f.tasks.push_back(make_task(9, 5500, 0, f.radar));  // main-lobe clutter
  f.table = AvailabilityTable::build(f.tasks, f.prfs, f.radar);
  f.dwells = look_dwells(f.prfs, f.radar);
  CHECK_THROWS_AS(IpInstance::edbf(f.table, f.dwells), InvalidInput);
  InstanceOptions opt;
  opt.exclude_unschedulable = true;
  const IpInstance inst = IpInstance::edbf(f.table, f.dwells, opt);
  CHECK(inst.task_count() == 3);
  CHECK(inst.excluded().size() == 1);
}

TEST_CASE("feasibility checker") {
  SUBCASE("empty schedule over zero tasks") {
    Fixture f = three_tasks();
    f.tasks.clear();
    const IpInstance inst = f.edbf();
    const Schedule s;
    CHECK(check_feasible(s, inst).empty());
    CHECK(objective(s, inst) == 0.0);
  }
  Fixture f = three_tasks();
  const IpInstance inst = f.edbf();
  SUBCASE("valid look") {
    Schedule s;
    s.looks.push_back(look_on(0, {{0, 1}, {1, 2}, {2, 3}}));
    CHECK(check_feasible(s, inst).empty());
  }
  SUBCASE("two tasks in one slot") {
    Schedule s;
    s.looks.push_back(look_on(0, {{0, 1}, {1, 1}, {2, 2}}));
    CHECK(has(check_feasible(s, inst), "C3"));
  }
  SUBCASE("gap in the occupied slots") {
    Schedule s;
    s.looks.push_back(look_on(0, {{0, 1}, {1, 3}}));
    s.looks.push_back(look_on(1, {{2, 1}}));
    const auto v = check_feasible(s, inst);
    CHECK(has(v, "C4"));
    CHECK_FALSE(has(v, "C2"));
  }
  SUBCASE("missing and duplicated tasks") {
    Schedule s;
    s.looks.push_back(look_on(0, {{0, 1}, {1, 2}}));
    s.looks.push_back(look_on(1, {{0, 1}}));
    CHECK(has(check_feasible(s, inst), "C2"));
  }
  SUBCASE("too many tasks and out-of-range slots") {
    Schedule s;
    s.looks.push_back(look_on(0, {{0, 1}, {1, 2}, {2, 5}}));
    CHECK(has(check_feasible(s, inst), "C8"));
  }
}

TEST_CASE("availability limits are reported per assignment") {
  Fixture f;
  f.radar = km_radar(4);
  f.prfs = {clear_prf(10000)};
  // Near the far blind edge: A_r = 1. Near the near edge: A_l = 0.
  f.tasks.push_back(make_task(1, 13600, 5000, f.radar));
  f.tasks.push_back(make_task(2, 1500, 5000, f.radar));
  f.tasks.push_back(make_task(3, 7000, 5000, f.radar));
  const IpInstance inst = f.edbf();
  REQUIRE(inst.cell(0, 0)->right == 1);
  REQUIRE(inst.cell(1, 0)->left == 0);
  Schedule s;
  s.looks.push_back(look_on(0, {{2, 1}, {0, 2}}));
  s.looks.push_back(look_on(0, {{1, 1}}));
  CHECK(has(check_feasible(s, inst), "C6"));
  Schedule t;
  t.looks.push_back(look_on(0, {{1, 1}, {2, 2}}));
  t.looks.push_back(look_on(0, {{0, 1}}));
  CHECK(has(check_feasible(t, inst), "C7"));
  Schedule ok;
  ok.looks.push_back(look_on(0, {{0, 1}}));
  ok.looks.push_back(look_on(0, {{2, 1}, {1, 2}}));
  CHECK(check_feasible(ok, inst).empty());
}

TEST_CASE("objective sums the dwell of used looks") {
  Fixture f = three_tasks();
  const IpInstance inst = f.edbf();
  Schedule one;
  one.looks.push_back(look_on(1, {{0, 1}, {1, 2}, {2, 3}}));
  CHECK(objective(one, inst) == doctest::Approx(f.dwells[1]));
  Schedule two;
  two.looks.push_back(look_on(0, {{0, 1}, {1, 2}}));
  two.looks.push_back(look_on(0, {{2, 1}}));
  CHECK(objective(two, inst) == doctest::Approx(2 * f.dwells[0]));
  Schedule merged;
  merged.looks.push_back(look_on(0, {{0, 1}, {1, 2}, {2, 3}}));
  CHECK(check_feasible(merged, inst).empty());
  CHECK(objective(two, inst) - objective(merged, inst) == doctest::Approx(f.dwells[0]));
  // Two 10 ms looks.
  const std::uint64_t counts[] = {2, 0};
  const double ten_ms[] = {0.010, 0.005};
  CHECK(objective_from_counts(counts, ten_ms) == doctest::Approx(0.020));
}

TEST_CASE("restated C6 and C7 agree with the pulse timeline") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> range(1000, 14000);
  std::uniform_real_distribution<double> sigma(0, 400);
  int looks = 0, rejected = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    Fixture f;
    f.radar = km_radar(1 + static_cast<int>(rng() % 8));
    f.prfs = {PrfConfig{10000, 1000, 500, 2500, 2500}};
    const int m = 1 + static_cast<int>(rng() % f.radar.max_interleave);
    for (int i = 0; i < m; ++i) {
      TrackTask t = make_task(i + 1, range(rng), 5000, f.radar, sigma(rng));
      if (is_trackable(t, f.prfs[0], f.radar)) f.tasks.push_back(t);
    }
    if (f.tasks.empty()) continue;
    const IpInstance inst = f.edbf();
    std::vector<TaskIndex> order(f.tasks.size());
    for (TaskIndex i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    Schedule s;
    s.looks.push_back(look_on(0, {}));
    bool clear = true;
    const int size = static_cast<int>(order.size());
    for (int k = 1; k <= size; ++k) {
      s.looks[0].placements.push_back({order[k - 1], k});
      const auto tl = pulseil_test::make_timeline(f.tasks[order[k - 1]], f.prfs[0], f.radar);
      clear = clear && pulseil_test::timeline_clear(tl, k, size);
    }
    const auto v = check_feasible(s, inst);
    const bool passes = !has(v, "C6") && !has(v, "C7");
    CHECK(passes == clear);
    ++looks;
    rejected += !clear;
  }
  CHECK(looks > 2000);
  CHECK(rejected > 100);
  CHECK(looks - rejected > 100);
}

TEST_CASE("exact solver: small cases") {
  Fixture f;
  f.radar = km_radar(4);
  f.prfs = {clear_prf(10000)};
  f.tasks.push_back(make_task(1, 5500, 5000, f.radar));
  {
    const IpInstance inst = f.edbf();
    const ExactResult r = solve_exact(inst);
    REQUIRE(r.feasible);
    CHECK(r.schedule.looks.size() == 1);
    CHECK(r.objective == doctest::Approx(f.dwells[0]));
    CHECK(check_feasible(r.schedule, inst).empty());
  }
  f.tasks.push_back(make_task(2, 5600, 5000, f.radar));
  {
    const IpInstance inst = f.edbf();
    const ExactResult r = solve_exact(inst);
    REQUIRE(r.feasible);
    CHECK(r.schedule.looks.size() == 1);
    CHECK(r.schedule.looks[0].placements.size() == 2);
  }
}

TEST_CASE("exact solver limits") {
  Fixture f;
  f.radar = km_radar(4);
  f.prfs = {clear_prf(10000)};
  for (int i = 0; i < 11; ++i) f.tasks.push_back(make_task(i + 1, 5500, 5000, f.radar));
  CHECK_THROWS_AS(solve_exact(f.edbf()), ResourceLimit);
  f.tasks.resize(8);
  ExactLimits tight;
  tight.node_budget = 3;
  CHECK_THROWS_AS(solve_exact(f.edbf(), tight), ResourceLimit);
}

TEST_CASE("look packing") {
  const IpCell cells[] = {{0, 0, 2}, {1, 1, 1}};
  const auto slots = pack_look(cells, 4);
  REQUIRE(slots);
  // Row 1 must lead (k = 1) and row 0 follows at k = 2.
  CHECK(*slots == std::vector<int>{2, 1});
  const IpCell stuck[] = {{0, 0, 1}, {1, 0, 1}};
  CHECK_FALSE(pack_look(stuck, 4));
}

TEST_CASE("exact solver matches unpruned enumeration on random instances") {
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Scenario sc = small_scenario(seed, 6);
    if (sc.tasks.empty()) continue;
    for (Mode mode : {Mode::kEdbf, Mode::kSdbf}) {
      CAPTURE(seed);
      const auto table = AvailabilityTable::build(sc.tasks, sc.prfs, sc.radar);
      const auto dwells = look_dwells(sc.prfs, sc.radar);
      InstanceOptions opt;
      opt.exclude_unschedulable = true;
      const IpInstance inst =
          mode == Mode::kEdbf
              ? IpInstance::edbf(table, dwells, opt)
              : IpInstance::sdbf(table,
                                 DiskCatalog::build(table, sc.tasks, sc.grid).deduplicated(),
                                 dwells, opt);
      const ExactResult r = solve_exact(inst);
      const auto want = pulseil_test::enumerate_optimum(inst);
      REQUIRE(want);
      REQUIRE(r.feasible);
      CHECK(r.objective == doctest::Approx(*want));
      CHECK(check_feasible(r.schedule, inst).empty());
      ++compared;
      SchedulerConfig cfg;
      cfg.mode = mode;
      const Schedule h = run_schedule(sc, cfg);
      CHECK(objective(h, inst) >= r.objective - 1e-12);
    }
  }
  CHECK(compared >= 40);
}

TEST_CASE("LP export") {
  Fixture f;
  f.radar = km_radar(2);
  f.prfs = {clear_prf(10000), clear_prf(13000)};
  f.tasks.push_back(make_task(1, 5500, 5000, f.radar));
  const IpInstance one = f.edbf();
  SUBCASE("single-task file") {
    const LpModel m = build_lp(one, false);
    std::size_t f_vars = 0;
    for (const std::string& b : m.binaries) f_vars += b.rfind("f_", 0) == 0;
    CHECK(f_vars == one.look_count());
    CHECK(m.binaries.size() == one.variable_count());
    std::size_t equality = 0;
    for (const LpRow& r : m.rows) {
      if (r.sense == "=") {
        ++equality;
        CHECK(r.rhs == 1.0);
        CHECK(r.terms.size() == one.look_count() * 2);
      }
    }
    CHECK(equality == 1);
    const std::string text = emit_lp(m);
    CHECK(text.find("Binar") != std::string::npos);
    CHECK(text.find("big_m=" + std::to_string(one.big_m())) != std::string::npos);
  }
  SUBCASE("round trip is byte-identical") {
    Fixture g = three_tasks();
    const IpInstance inst = g.edbf();
    for (bool relax : {false, true}) {
      const std::string text = export_lp(inst, relax);
      CHECK(emit_lp(parse_lp(text)) == text);
    }
  }
  SUBCASE("facility relaxation drops the slot index") {
    Fixture g = three_tasks();
    const LpModel m = build_lp(g.edbf(), true);
    for (const std::string& b : m.binaries) {
      CHECK(std::count(b.begin(), b.end(), '_') <= 2);
    }
    for (const LpRow& r : m.rows) {
      const std::string tag = r.name.substr(0, 2);
      CHECK(tag != "c3");
      CHECK(tag != "c4");
      CHECK(tag != "c6");
      CHECK(tag != "c7");
    }
  }
  CHECK_THROWS(parse_lp("Minimize\n obj: 1 x\nnonsense here\n"));
}
