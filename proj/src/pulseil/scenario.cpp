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

#include "pulseil/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace pulseil {

using nlohmann::json;

void Scenario::normalize() {
  radar.validate();
  if (prfs.empty()) throw InvalidInput("scenario: PRF list is empty");
  for (const PrfConfig& p : prfs) validate_prf(p, radar);
  grid.validate();
  for (const TrackTask& t : tasks) t.validate();
  std::stable_sort(tasks.begin(), tasks.end(),
                   [](const TrackTask& a, const TrackTask& b) {
                     return a.id < b.id;
                   });
  for (std::size_t i = 1; i < tasks.size(); ++i) {
    if (tasks[i].id == tasks[i - 1].id) {
      throw InvalidInput("scenario: duplicate task id " +
                         std::to_string(tasks[i].id));
    }
  }
}

std::optional<TaskIndex> Scenario::index_of(std::int64_t id) const {
  auto it = std::lower_bound(
      tasks.begin(), tasks.end(), id,
      [](const TrackTask& t, std::int64_t v) { return t.id < v; });
  if (it == tasks.end() || it->id != id) return std::nullopt;
  return static_cast<TaskIndex>(it - tasks.begin());
}

namespace {

template <typename T>
void read_opt(const json& obj, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  out = it->get<T>();
}

template <typename T>
T read_req(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw InvalidInput("scenario: " + where + " is missing \"" + key + "\"");
  }
  return it->get<T>();
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw InvalidInput("scenario: top level must be an object");
    const std::string format = read_req<std::string>(doc, "format", "document");
    if (format != kScenarioFormat) {
      throw InvalidInput("scenario: unsupported format \"" + format + "\"");
    }
    if (auto it = doc.find("radar"); it != doc.end()) {
      const json& r = *it;
      read_opt(r, "wave_speed", s.radar.wave_speed);
      read_opt(r, "wavelength", s.radar.wavelength);
      read_opt(r, "pulse_width", s.radar.pulse_width);
      read_opt(r, "n_range", s.radar.n_range);
      read_opt(r, "n_freq", s.radar.n_freq);
      read_opt(r, "max_interleave", s.radar.max_interleave);
      read_opt(r, "pulses_per_look", s.radar.pulses_per_look);
    }
    if (auto it = doc.find("prfs"); it != doc.end()) {
      s.prfs.clear();
      for (const json& p : *it) {
        PrfConfig prf;
        prf.frequency = read_req<double>(p, "frequency", "prf");
        read_opt(p, "clutter_range_plus", prf.clutter_range_plus);
        read_opt(p, "clutter_range_minus", prf.clutter_range_minus);
        read_opt(p, "clutter_freq_plus", prf.clutter_freq_plus);
        read_opt(p, "clutter_freq_minus", prf.clutter_freq_minus);
        s.prfs.push_back(prf);
      }
    }
    if (auto it = doc.find("grid"); it != doc.end()) {
      read_opt(*it, "spacing", s.grid.spacing);
      read_opt(*it, "disk_radius", s.grid.disk_radius);
    }
    if (auto it = doc.find("tasks"); it != doc.end()) {
      for (const json& t : *it) {
        TrackTask task;
        task.id = read_req<std::int64_t>(t, "id", "task");
        const std::string where = "task " + std::to_string(task.id);
        task.range = read_req<double>(t, "range", where);
        read_opt(t, "sigma_range", task.sigma_range);
        read_opt(t, "radial_velocity", task.radial_velocity);
        read_opt(t, "sigma_freq", task.sigma_freq);
        read_opt(t, "u", task.point.u);
        read_opt(t, "v", task.point.v);
        s.tasks.push_back(task);
      }
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("scenario: ") + e.what());
  }
  s.normalize();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("scenario: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& s) {
  json doc;
  doc["format"] = kScenarioFormat;
  doc["radar"] = {{"wave_speed", s.radar.wave_speed},
                  {"wavelength", s.radar.wavelength},
                  {"pulse_width", s.radar.pulse_width},
                  {"n_range", s.radar.n_range},
                  {"n_freq", s.radar.n_freq},
                  {"max_interleave", s.radar.max_interleave},
                  {"pulses_per_look", s.radar.pulses_per_look}};
  json prfs = json::array();
  for (const PrfConfig& p : s.prfs) {
    prfs.push_back({{"frequency", p.frequency},
                    {"clutter_range_plus", p.clutter_range_plus},
                    {"clutter_range_minus", p.clutter_range_minus},
                    {"clutter_freq_plus", p.clutter_freq_plus},
                    {"clutter_freq_minus", p.clutter_freq_minus}});
  }
  doc["prfs"] = std::move(prfs);
  doc["grid"] = {{"spacing", s.grid.spacing},
                 {"disk_radius", s.grid.disk_radius}};
  json tasks = json::array();
  for (const TrackTask& t : s.tasks) {
    tasks.push_back({{"id", t.id},
                     {"range", t.range},
                     {"sigma_range", t.sigma_range},
                     {"radial_velocity", t.radial_velocity},
                     {"sigma_freq", t.sigma_freq},
                     {"u", t.point.u},
                     {"v", t.point.v}});
  }
  doc["tasks"] = std::move(tasks);
  return doc.dump(1) + "\n";
}

void ScenarioSpec::validate() const {
  if (!(range_min > 0.0) || !(range_min <= range_max)) {
    throw InvalidInput("scenario spec: need 0 < range_min <= range_max");
  }
  if (!(velocity_max >= 0.0)) {
    throw InvalidInput("scenario spec: velocity bound must be >= 0");
  }
  if (!(sigma_range_min >= 0.0) || !(sigma_range_min <= sigma_range_max) ||
      !(sigma_freq_min >= 0.0) || !(sigma_freq_min <= sigma_freq_max)) {
    throw InvalidInput("scenario spec: sigma bounds must be ordered and >= 0");
  }
  if (cluster_count < 1) throw InvalidInput("scenario spec: need >= 1 cluster");
  if (!(cluster_radius >= 0.0) || !(field_radius >= 0.0) ||
      !(field_radius + cluster_radius <= 1.0)) {
    throw InvalidInput(
        "scenario spec: clusters must fit inside the unit scan disk");
  }
  radar.validate();
  for (const PrfConfig& p : prfs) validate_prf(p, radar);
  grid.validate();
}

namespace {

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

// Uniform point in a disk by rejection from the bounding square.
ScanPoint point_in_disk(std::mt19937_64& rng, ScanPoint c, double radius) {
  for (;;) {
    const double du = uniform_in(rng, -1.0, 1.0);
    const double dv = uniform_in(rng, -1.0, 1.0);
    if (du * du + dv * dv <= 1.0) {
      return ScanPoint{c.u + radius * du, c.v + radius * dv};
    }
  }
}

}  // namespace

Scenario generate_scenario(const ScenarioSpec& spec) {
  spec.validate();
  Scenario s;
  s.radar = spec.radar;
  s.prfs = spec.prfs;
  s.grid = spec.grid;
  std::mt19937_64 rng(mix64(spec.seed ^ 0x5343'454e'4152'494fULL));

  std::vector<ScanPoint> clusters;
  for (int c = 0; c < spec.cluster_count; ++c) {
    clusters.push_back(point_in_disk(rng, ScanPoint{}, spec.field_radius));
  }
  const std::size_t attempt_limit = 1000 * (spec.task_count + 1);
  std::size_t attempts = 0;
  while (s.tasks.size() < spec.task_count) {
    if (++attempts > attempt_limit) {
      throw InvalidInput(
          "scenario spec: too few draws are trackable with any PRF");
    }
    TrackTask t;
    t.id = static_cast<std::int64_t>(s.tasks.size()) + 1;
    t.range = uniform_in(rng, spec.range_min, spec.range_max);
    t.radial_velocity = uniform_in(rng, -spec.velocity_max, spec.velocity_max);
    t.sigma_range = uniform_in(rng, spec.sigma_range_min, spec.sigma_range_max);
    t.sigma_freq = uniform_in(rng, spec.sigma_freq_min, spec.sigma_freq_max);
    const ScanPoint c = clusters[uniform_below(rng, clusters.size())];
    t.point = point_in_disk(rng, c, spec.cluster_radius);
    if (!spec.keep_unschedulable) {
      const bool any = std::any_of(
          s.prfs.begin(), s.prfs.end(),
          [&](const PrfConfig& p) { return is_trackable(t, p, s.radar); });
      if (!any) continue;
    }
    s.tasks.push_back(t);
  }
  s.normalize();
  return s;
}

}  // namespace pulseil
