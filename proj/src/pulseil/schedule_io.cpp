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

#include "pulseil/schedule_io.hpp"

#include <charconv>
#include <map>
#include <vector>

namespace pulseil {

std::string write_schedule(const Schedule& s, const Scenario& scenario) {
  const SchedulerConfig& c = s.config;
  const std::vector<double> dwells = look_dwells(scenario.prfs, scenario.radar);
  std::string out(kScheduleTag);
  out += " mode=";
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
  out += " seed=" + std::to_string(c.seed);
  if (s.grid) {
    out += " grid=" + format_double(s.grid->spacing) + "," +
           format_double(s.grid->disk_radius);
  }
  out += '\n';
  for (std::size_t j = 0; j < s.looks.size(); ++j) {
    const ScheduledLook& l = s.looks[j];
    PULSEIL_CHECK(l.prf < scenario.prfs.size(), "look PRF out of range");
    out += "look " + std::to_string(j) + " prf=" + std::to_string(l.prf) +
           " f_r=" + format_double(scenario.prfs[l.prf].frequency) +
           " dwell=" + format_double(dwells[l.prf]);
    if (l.disk) {
      out += " disk=" + std::to_string(*l.disk) +
             " center=" + format_double(l.center.u) + "," +
             format_double(l.center.v) + " grid=" + std::to_string(l.grid.iu) +
             "," + std::to_string(l.grid.iv);
    }
    out += '\n';
    for (const Placement& p : l.placements) {
      out += "task " + std::to_string(scenario.tasks[p.task].id) + " slot " +
             std::to_string(p.slot) + "\n";
    }
  }
  for (TaskIndex t : s.unschedulable) {
    out += "unschedulable " + std::to_string(scenario.tasks[t].id) + "\n";
  }
  out += "summary looks=" + std::to_string(s.looks.size()) +
         " tasks=" + std::to_string(s.scheduled_task_count()) +
         " unschedulable=" + std::to_string(s.unschedulable.size()) +
         " objective=" + format_double(s.objective(dwells)) + "\n";
  return out;
}

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& why) {
  throw InvalidInput("schedule parse: line " + std::to_string(line) + ": " +
                     why);
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T number(std::string_view tok, std::size_t line) {
  T v{};
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    bad(line, "bad number '" + std::string(tok) + "'");
  }
  return v;
}

// key=value fields after the leading words of a line.
std::map<std::string_view, std::string_view> fields(
    const std::vector<std::string_view>& toks, std::size_t from,
    std::size_t line) {
  std::map<std::string_view, std::string_view> out;
  for (std::size_t i = from; i < toks.size(); ++i) {
    const std::size_t eq = toks[i].find('=');
    if (eq == std::string_view::npos) bad(line, "expected key=value");
    out[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return out;
}

std::string_view need(const std::map<std::string_view, std::string_view>& f,
                      std::string_view key, std::size_t line) {
  auto it = f.find(key);
  if (it == f.end()) bad(line, "missing " + std::string(key));
  return it->second;
}

std::pair<std::string_view, std::string_view> pair_of(std::string_view v,
                                                       std::size_t line) {
  const std::size_t comma = v.find(',');
  if (comma == std::string_view::npos) bad(line, "expected a,b");
  return {v.substr(0, comma), v.substr(comma + 1)};
}

TaskIndex task_of(const Scenario& sc, std::string_view tok, std::size_t line) {
  const auto id = number<std::int64_t>(tok, line);
  const auto idx = sc.index_of(id);
  if (!idx) bad(line, "unknown task id " + std::to_string(id));
  return *idx;
}

}  // namespace

Schedule parse_schedule(std::string_view text, const Scenario& sc) {
  Schedule s;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool header = false;
  bool summary = false;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header) {
      if (line.substr(0, kScheduleTag.size()) != kScheduleTag) {
        bad(line_no, "missing version header");
      }
      const auto toks = split(line.substr(kScheduleTag.size()));
      const auto f = fields(toks, 0, line_no);
      const auto mode = parse_mode(need(f, "mode", line_no));
      if (!mode) bad(line_no, "unknown mode");
      s.config.mode = *mode;
      const auto task_rule = parse_task_rule(need(f, "task_rule", line_no));
      if (!task_rule) bad(line_no, "unknown task rule");
      s.config.task_rule = *task_rule;
      s.config.seed = number<std::uint64_t>(need(f, "seed", line_no), line_no);
      if (*mode == Mode::kEdbf) {
        const auto r = parse_prf_rule(need(f, "prf_rule", line_no));
        if (!r) bad(line_no, "unknown PRF rule");
        s.config.prf_rule = *r;
      } else {
        const auto d = parse_disk_rule(need(f, "disk_rule", line_no));
        const auto sub = parse_sub_rule(need(f, "sub_rule", line_no));
        if (!d || !sub) bad(line_no, "unknown disk or sub rule");
        s.config.disk_rule = *d;
        s.config.sub_rule = *sub;
      }
      if (auto it = f.find("grid"); it != f.end()) {
        const auto [a, b] = pair_of(it->second, line_no);
        s.grid = GridSpec{number<double>(a, line_no), number<double>(b, line_no)};
      }
      header = true;
      continue;
    }
    if (summary) bad(line_no, "content after summary");
    const auto toks = split(line);
    if (toks[0] == "look") {
      if (toks.size() < 2) bad(line_no, "look without index");
      if (number<std::size_t>(toks[1], line_no) != s.looks.size()) {
        bad(line_no, "look indices must be consecutive from 0");
      }
      const auto f = fields(toks, 2, line_no);
      ScheduledLook l;
      l.prf = number<PrfIndex>(need(f, "prf", line_no), line_no);
      if (l.prf >= sc.prfs.size()) bad(line_no, "PRF index out of range");
      l.frequency = number<double>(need(f, "f_r", line_no), line_no);
      l.dwell = number<double>(need(f, "dwell", line_no), line_no);
      if (auto it = f.find("disk"); it != f.end()) {
        l.disk = number<DiskId>(it->second, line_no);
        const auto [u, v] = pair_of(need(f, "center", line_no), line_no);
        l.center = ScanPoint{number<double>(u, line_no), number<double>(v, line_no)};
        const auto [iu, iv] = pair_of(need(f, "grid", line_no), line_no);
        l.grid = GridPoint{number<std::int64_t>(iu, line_no),
                           number<std::int64_t>(iv, line_no)};
      }
      s.looks.push_back(std::move(l));
    } else if (toks[0] == "task") {
      if (toks.size() != 4 || toks[2] != "slot") bad(line_no, "bad task line");
      if (s.looks.empty()) bad(line_no, "task before any look");
      s.looks.back().placements.push_back(
          {task_of(sc, toks[1], line_no), number<int>(toks[3], line_no)});
    } else if (toks[0] == "unschedulable") {
      if (toks.size() != 2) bad(line_no, "bad unschedulable line");
      s.unschedulable.push_back(task_of(sc, toks[1], line_no));
    } else if (toks[0] == "summary") {
      summary = true;
    } else {
      bad(line_no, "unknown record '" + std::string(toks[0]) + "'");
    }
  }
  if (!header) throw InvalidInput("schedule parse: empty input");
  if (!summary) throw InvalidInput("schedule parse: missing summary line");
  return s;
}

}  // namespace pulseil
