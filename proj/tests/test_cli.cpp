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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path kTmp = PULSEIL_TEST_TMP;

fs::path tmp(const std::string& name) {
  fs::create_directories(kTmp);
  return kTmp / name;
}

// Runs the CLI with args; stdout and stderr go to files next to the outputs.
int run(const std::string& args, const std::string& tag = "last") {
  const std::string cmd = std::string("\"") + PULSEIL_CLI_PATH + "\" " + args +
                          " >\"" + tmp(tag + ".out").string() + "\" 2>\"" +
                          tmp(tag + ".err").string() + "\"";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : 128;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::string task_json(int id, double range, double velocity, double u) {
  std::ostringstream os;
  os << "{\"id\": " << id << ", \"radial_velocity\": " << velocity
     << ", \"range\": " << range
     << ", \"sigma_freq\": 10.0, \"sigma_range\": 20.0, \"u\": " << u
     << ", \"v\": 0.1}";
  return os.str();
}

// Two PRFs and four slots: within the exact solver's limits.
fs::path small_scenario(const std::string& name, const std::vector<std::string>& tasks) {
  std::string body = R"({
 "format": "pulseil-scenario/1",
 "grid": {"disk_radius": 0.05, "spacing": 0.02},
 "prfs": [
  {"clutter_freq_minus": 2000.0, "clutter_freq_plus": 2000.0,
   "clutter_range_minus": 2000.0, "clutter_range_plus": 2000.0,
   "frequency": 10000.0},
  {"clutter_freq_minus": 2000.0, "clutter_freq_plus": 2000.0,
   "clutter_range_minus": 2000.0, "clutter_range_plus": 2000.0,
   "frequency": 13000.0}
 ],
 "radar": {"max_interleave": 4, "n_freq": 3.0, "n_range": 3.0,
           "pulse_width": 1e-05, "pulses_per_look": 64,
           "wave_speed": 299792458.0, "wavelength": 0.03},
 "tasks": [)";
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    body += (i == 0 ? "\n  " : ",\n  ") + tasks[i];
  }
  body += "\n ]\n}\n";
  const fs::path p = tmp(name);
  std::ofstream(p) << body;
  return p;
}

// Ratio column of every data row of an oracle table.
std::vector<double> ratios(const std::string& table) {
  std::vector<double> out;
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("config", 0) == 0) continue;
    std::istringstream row(line);
    std::string label, objective, looks, ratio;
    std::getline(row, label, '\t');
    std::getline(row, objective, '\t');
    std::getline(row, looks, '\t');
    std::getline(row, ratio, '\t');
    out.push_back(std::stod(ratio));
  }
  return out;
}

}  // namespace

TEST_CASE("generate then schedule writes a schedule file") {
  const fs::path sc = tmp("scenario.json");
  REQUIRE(run("generate --tasks 80 --seed 4 -o " + q(sc)) == 0);
  for (const char* mode : {"edbf", "sdbf"}) {
    const fs::path out = tmp(std::string("schedule_") + mode + ".txt");
    CHECK(run(std::string("schedule --mode ") + mode + " " + q(sc) + " -o " + q(out)) == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("# pulseil-schedule v1", 0) == 0);
    CHECK(text.find("seed=0") != std::string::npos);
    CHECK(run("check " + q(sc) + " " + q(out)) == 0);
  }
}

TEST_CASE("usage errors exit 1") {
  CHECK(run("schedule " + q(tmp("missing.json"))) == 1);
  CHECK(!slurp(tmp("last.err")).empty());
  CHECK(run("schedule --mode nope " + q(tmp("missing.json"))) == 1);
  CHECK(run("frobnicate") == 1);
  const fs::path bad = tmp("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK(run("schedule " + q(bad)) == 1);
}

TEST_CASE("unschedulable input exits 2 with a report") {
  // Zero Doppler sits in main-lobe clutter for every PRF.
  const fs::path sc = small_scenario(
      "unschedulable.json", {task_json(1, 7000, -75, 0.1), task_json(2, 7000, 0, 0.1)});
  CHECK(run("schedule " + q(sc)) == 2);
  CHECK(slurp(tmp("last.err")).find('2') != std::string::npos);
}

TEST_CASE("tampered schedule fails the check") {
  const fs::path sc = small_scenario(
      "tamper.json", {task_json(1, 7000, -75, 0.1), task_json(2, 7300, -75, 0.11)});
  const fs::path out = tmp("tamper.txt");
  REQUIRE(run("schedule " + q(sc) + " -o " + q(out)) == 0);
  std::string text = slurp(out);
  const auto at = text.find("slot 2");
  REQUIRE(at != std::string::npos);
  text.replace(at, 6, "slot 1");
  std::ofstream(out) << text;
  CHECK(run("check " + q(sc) + " " + q(out)) == 2);
  CHECK(slurp(tmp("last.out") ).find("C3") != std::string::npos);
}

TEST_CASE("oracle comparison on a six-task instance") {
  const fs::path sc = small_scenario(
      "six.json",
      {task_json(1, 7000, -75, 0.1), task_json(2, 7300, -75, 0.11),
       task_json(3, 9000, -75, -0.3), task_json(4, 11000, -120, 0.4),
       task_json(5, 6100, -90, 0.41), task_json(6, 8200, -60, -0.31)});
  REQUIRE(run("oracle-compare --mode all " + q(sc)) == 0);
  const std::string table = slurp(tmp("last.out"));
  CHECK(table.find("# optimal mode=edbf") != std::string::npos);
  CHECK(table.find("# optimal mode=sdbf") != std::string::npos);
  const auto r = ratios(table);
  CHECK(r.size() == 18 + 36);
  for (double x : r) CHECK(x >= 1.0 - 1e-12);
}

TEST_CASE("one-task instance: every ratio is one") {
  // f_s = 14 kHz folds into clutter at 13 kHz, so only one PRF tracks it.
  const fs::path sc = small_scenario("one.json", {task_json(1, 7000, -210, 0.1)});
  REQUIRE(run("oracle-compare --mode all " + q(sc)) == 0);
  const auto r = ratios(slurp(tmp("last.out")));
  CHECK(r.size() == 18 + 36);
  for (double x : r) CHECK(x == doctest::Approx(1.0));
}

TEST_CASE("oracle limit suggests the heuristic-only mode") {
  const fs::path sc = tmp("large.json");
  REQUIRE(run("generate --tasks 30 --seed 1 -o " + q(sc)) == 0);
  CHECK(run("oracle-compare " + q(sc)) != 0);
  CHECK(slurp(tmp("last.err")).find("--mode heuristic-only") != std::string::npos);
  CHECK(run("oracle-compare --mode heuristic-only " + q(sc)) == 0);
}

TEST_CASE("outputs are deterministic") {
  const fs::path sc = tmp("det.json");
  REQUIRE(run("generate --tasks 150 --seed 12 -o " + q(sc)) == 0);
  const fs::path sc2 = tmp("det2.json");
  REQUIRE(run("generate --tasks 150 --seed 12 -o " + q(sc2)) == 0);
  CHECK(slurp(sc) == slurp(sc2));
  const std::string flags[] = {
      "--mode edbf --prf-rule R --task-rule R --seed 7",
      "--mode sdbf --disk-rule GD --sub-rule R --task-rule R --seed 7",
      "--mode sdbf --disk-rule WGD --backend pairwise"};
  for (const std::string& f : flags) {
    const fs::path a = tmp("det_a.txt");
    const fs::path b = tmp("det_b.txt");
    REQUIRE(run("schedule " + f + " " + q(sc) + " -o " + q(a)) == 0);
    REQUIRE(run("schedule " + f + " " + q(sc) + " -o " + q(b)) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("seed=") != std::string::npos);
  }
}

TEST_CASE("export, dumps and bench") {
  const fs::path sc = small_scenario(
      "lp.json", {task_json(1, 7000, -75, 0.1), task_json(2, 7300, -75, 0.11)});
  const fs::path lp = tmp("out.lp");
  REQUIRE(run("export-lp " + q(sc) + " -o " + q(lp)) == 0);
  CHECK(slurp(lp).find("h_0_0_1") != std::string::npos);
  REQUIRE(run("export-lp --sscfl --mode sdbf " + q(sc) + " -o " + q(lp)) == 0);
  CHECK(slurp(lp).find("h_0_0_1") == std::string::npos);
  REQUIRE(run("disks " + q(sc)) == 0);
  CHECK(!slurp(tmp("last.out")).empty());
  REQUIRE(run("availability " + q(sc)) == 0);
  CHECK(!slurp(tmp("last.out")).empty());
  REQUIRE(run("bench --sizes 50 100 200 400 --reps 1") == 0);
  CHECK(slurp(tmp("last.out")).find("time_exponent=") != std::string::npos);
  CHECK(run("bench --sizes 50 100 200 --reps 1") == 1);
  REQUIRE(run("schedule --debug-dump " + q(sc)) == 0);
  CHECK(!slurp(tmp("last.err")).empty());
}
