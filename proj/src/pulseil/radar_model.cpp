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

#include "pulseil/radar_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pulseil {

namespace {

constexpr int kMaxInterleaveLimit = 64;

// Availabilities are clamped long before they could overflow.
std::int64_t floor_to_count(double x) {
  if (!(x > 0.0)) return 0;
  return static_cast<std::int64_t>(std::floor(std::min(x, 1e15)));
}

}  // namespace

void RadarConfig::validate() const {
  if (!(wave_speed > 0.0)) throw InvalidInput("radar: wave speed must be > 0");
  if (!(wavelength > 0.0)) throw InvalidInput("radar: wavelength must be > 0");
  if (!(pulse_width > 0.0)) throw InvalidInput("radar: pulse width must be > 0");
  if (!(n_range >= 0.0) || !(n_freq >= 0.0)) {
    throw InvalidInput("radar: sigma multiples must be >= 0");
  }
  if (max_interleave < 1 || max_interleave > kMaxInterleaveLimit) {
    throw InvalidInput("radar: max_interleave must be in [1, " +
                       std::to_string(kMaxInterleaveLimit) + "]");
  }
  if (pulses_per_look < 1) {
    throw InvalidInput("radar: pulses_per_look must be >= 1");
  }
}

void TrackTask::validate() const {
  const std::string who = "task " + std::to_string(id) + ": ";
  if (!(range > 0.0)) throw InvalidInput(who + "range must be > 0");
  if (!(sigma_range >= 0.0)) throw InvalidInput(who + "sigma_range must be >= 0");
  if (!(sigma_freq >= 0.0)) throw InvalidInput(who + "sigma_freq must be >= 0");
  if (!std::isfinite(radial_velocity)) {
    throw InvalidInput(who + "radial_velocity must be finite");
  }
  if (!(point.u * point.u + point.v * point.v <= 1.0)) {
    throw InvalidInput(who + "scan point must lie in the unit disk");
  }
}

double unambiguous_range(const PrfConfig& prf, const RadarConfig& cfg) {
  return cfg.wave_speed / (2.0 * prf.frequency);
}

double ambiguous_range(double range, const PrfConfig& prf,
                       const RadarConfig& cfg) {
  const double ru = unambiguous_range(prf, cfg);
  double r = std::fmod(range, ru);
  if (r < 0.0) r += ru;
  if (r >= ru) r = std::nextafter(ru, 0.0);
  return r;
}

double doppler_shift(const TrackTask& task, const RadarConfig& cfg) {
  return -2.0 * task.radial_velocity / cfg.wavelength;
}

double ambiguous_frequency(const TrackTask& task, const PrfConfig& prf,
                           const RadarConfig& cfg) {
  const double fr = prf.frequency;
  double f = std::fmod(doppler_shift(task, cfg), fr);
  if (f < 0.0) f += fr;
  if (f >= fr) f = std::nextafter(fr, 0.0);
  return f;
}

BlindWidths blind_widths(const PrfConfig& prf, const RadarConfig& cfg) {
  const double eclipse = cfg.slot_range();
  return BlindWidths{
      .range_plus = std::max(prf.clutter_range_plus, eclipse),
      .range_minus = prf.clutter_range_minus + eclipse,
      .freq_plus = prf.clutter_freq_plus,
      .freq_minus = prf.clutter_freq_minus,
  };
}

void validate_prf(const PrfConfig& prf, const RadarConfig& cfg) {
  const std::string who = "prf " + format_double(prf.frequency) + " Hz: ";
  if (!(prf.frequency > 0.0)) throw InvalidInput(who + "frequency must be > 0");
  if (!(prf.clutter_range_plus >= 0.0) || !(prf.clutter_range_minus >= 0.0) ||
      !(prf.clutter_freq_plus >= 0.0) || !(prf.clutter_freq_minus >= 0.0)) {
    throw InvalidInput(who + "clutter widths must be >= 0");
  }
  const BlindWidths eps = blind_widths(prf, cfg);
  if (!(unambiguous_range(prf, cfg) > eps.range_plus + eps.range_minus)) {
    throw InvalidInput(who + "empty clear region in range");
  }
  if (!(prf.frequency > eps.freq_plus + eps.freq_minus)) {
    throw InvalidInput(who + "empty clear region in Doppler");
  }
}

bool is_trackable(const TrackTask& task, const PrfConfig& prf,
                  const RadarConfig& cfg) {
  const BlindWidths eps = blind_widths(prf, cfg);
  const double ru = unambiguous_range(prf, cfg);
  const double ra = ambiguous_range(task.range, prf, cfg);
  const double fu = prf.frequency;
  const double fa = ambiguous_frequency(task, prf, cfg);
  const double dr = cfg.n_range * task.sigma_range;
  const double df = cfg.n_freq * task.sigma_freq;
  return ra - dr >= eps.range_plus && ra + dr <= ru - eps.range_minus &&
         fa - df >= eps.freq_plus && fa + df <= fu - eps.freq_minus;
}

std::int64_t raw_leftward_availability(const TrackTask& task,
                                       const PrfConfig& prf,
                                       const RadarConfig& cfg) {
  if (!is_trackable(task, prf, cfg)) return 0;
  const BlindWidths eps = blind_widths(prf, cfg);
  const double ra = ambiguous_range(task.range, prf, cfg);
  const double scale = 2.0 / (cfg.wave_speed * cfg.pulse_width);
  return floor_to_count(scale *
                        (ra - cfg.n_range * task.sigma_range - eps.range_plus));
}

std::int64_t raw_rightward_availability(const TrackTask& task,
                                        const PrfConfig& prf,
                                        const RadarConfig& cfg) {
  if (!is_trackable(task, prf, cfg)) return 0;
  const BlindWidths eps = blind_widths(prf, cfg);
  const double ru = unambiguous_range(prf, cfg);
  const double ra = ambiguous_range(task.range, prf, cfg);
  const double scale = 2.0 / (cfg.wave_speed * cfg.pulse_width);
  return floor_to_count(
      scale * (ru - (ra + cfg.n_range * task.sigma_range + eps.range_minus)) +
      1.0);
}

int leftward_availability(const TrackTask& task, const PrfConfig& prf,
                          const RadarConfig& cfg) {
  return static_cast<int>(std::min<std::int64_t>(
      raw_leftward_availability(task, prf, cfg), cfg.max_interleave));
}

int rightward_availability(const TrackTask& task, const PrfConfig& prf,
                           const RadarConfig& cfg) {
  return static_cast<int>(std::min<std::int64_t>(
      raw_rightward_availability(task, prf, cfg), cfg.max_interleave));
}

std::vector<PrfConfig> default_prf_set() {
  std::vector<PrfConfig> prfs;
  for (int i = 0; i < 8; ++i) {
    prfs.push_back(PrfConfig{
        .frequency = 9'500.0 + 1'000.0 * i,
        .clutter_range_plus = 2'000.0,
        .clutter_range_minus = 2'000.0,
        .clutter_freq_plus = 2'000.0,
        .clutter_freq_minus = 2'000.0,
    });
  }
  return prfs;
}

AvailabilityTable AvailabilityTable::build(std::span<const TrackTask> tasks,
                                           std::span<const PrfConfig> prfs,
                                           const RadarConfig& cfg) {
  if (prfs.empty()) throw InvalidInput("availability: PRF set is empty");
  AvailabilityTable t;
  t.task_count_ = tasks.size();
  t.prf_count_ = prfs.size();
  t.max_interleave_ = cfg.max_interleave;
  t.cells_.resize(tasks.size() * prfs.size());
  t.task_offsets_.assign(tasks.size() + 1, 0);
  std::vector<std::size_t> per_prf(prfs.size(), 0);

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    t.task_offsets_[i] = t.task_prfs_.size();
    for (std::size_t p = 0; p < prfs.size(); ++p) {
      Availability& a = t.cells_[i * prfs.size() + p];
      a.ambiguous_range = ambiguous_range(tasks[i].range, prfs[p], cfg);
      a.trackable = is_trackable(tasks[i], prfs[p], cfg);
      if (!a.trackable) continue;
      a.left = static_cast<std::uint8_t>(
          leftward_availability(tasks[i], prfs[p], cfg));
      a.right = static_cast<std::uint8_t>(
          rightward_availability(tasks[i], prfs[p], cfg));
      PULSEIL_CHECK(a.right >= 1, "trackable task with zero rightward slots");
      t.task_prfs_.push_back(static_cast<PrfIndex>(p));
      ++per_prf[p];
    }
    if (t.task_prfs_.size() == t.task_offsets_[i]) {
      t.unschedulable_.push_back(static_cast<TaskIndex>(i));
    }
  }
  t.task_offsets_[tasks.size()] = t.task_prfs_.size();

  t.prf_offsets_.assign(prfs.size() + 1, 0);
  for (std::size_t p = 0; p < prfs.size(); ++p) {
    t.prf_offsets_[p + 1] = t.prf_offsets_[p] + per_prf[p];
  }
  t.prf_tasks_.resize(t.task_prfs_.size());
  std::vector<std::size_t> fill(t.prf_offsets_.begin(), t.prf_offsets_.end() - 1);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (std::size_t k = t.task_offsets_[i]; k < t.task_offsets_[i + 1]; ++k) {
      t.prf_tasks_[fill[t.task_prfs_[k]]++] = static_cast<TaskIndex>(i);
    }
  }
  return t;
}

std::span<const PrfIndex> AvailabilityTable::prfs_of(TaskIndex task) const {
  return std::span<const PrfIndex>(task_prfs_).subspan(
      task_offsets_[task], task_offsets_[task + 1] - task_offsets_[task]);
}

std::span<const TaskIndex> AvailabilityTable::tasks_of(PrfIndex prf) const {
  return std::span<const TaskIndex>(prf_tasks_).subspan(
      prf_offsets_[prf], prf_offsets_[prf + 1] - prf_offsets_[prf]);
}

}  // namespace pulseil
