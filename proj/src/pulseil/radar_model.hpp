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

// Pulse Doppler range/Doppler folding, blind-zone geometry and the per
// (task, PRF) interleaving availabilities that every scheduler consumes.
//
// Slot geometry: slot k of a PRI occupies [(k-1) t_p, k t_p) measured from
// the PRI start; interleaved T-pulses are packed back to back from slot 1.

#ifndef PULSEIL_RADAR_MODEL_HPP_
#define PULSEIL_RADAR_MODEL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "pulseil/common.hpp"

namespace pulseil {

struct RadarConfig {
  double wave_speed = 299'792'458.0;  // m/s
  double wavelength = 0.03;           // m
  double pulse_width = 10e-6;         // s
  double n_range = 3.0;               // sigma multiple on range
  double n_freq = 3.0;                // sigma multiple on Doppler
  int max_interleave = 8;             // N_intlv, tasks per look
  int pulses_per_look = 64;           // dwell model: pulses / f_r

  // Range extent of one T-pulse slot, c * t_p / 2.
  double slot_range() const { return wave_speed * pulse_width / 2.0; }

  // Throws InvalidInput on a violated invariant.
  void validate() const;
};

struct PrfConfig {
  double frequency = 12'500.0;  // f_r, Hz
  double clutter_range_plus = 0.0;
  double clutter_range_minus = 0.0;
  double clutter_freq_plus = 0.0;
  double clutter_freq_minus = 0.0;

  double interval() const { return 1.0 / frequency; }
};

struct BlindWidths {
  double range_plus;
  double range_minus;
  double freq_plus;
  double freq_minus;
};

// Direction cosines on the normalized scanning plane.
struct ScanPoint {
  double u = 0.0;
  double v = 0.0;
};

struct TrackTask {
  std::int64_t id = 0;
  double range = 0.0;            // m
  double sigma_range = 0.0;      // m
  double radial_velocity = 0.0;  // m/s, positive = receding
  double sigma_freq = 0.0;       // Hz
  ScanPoint point;

  void validate() const;
};

double unambiguous_range(const PrfConfig& prf, const RadarConfig& cfg);
double ambiguous_range(double range, const PrfConfig& prf,
                       const RadarConfig& cfg);
double doppler_shift(const TrackTask& task, const RadarConfig& cfg);
double ambiguous_frequency(const TrackTask& task, const PrfConfig& prf,
                           const RadarConfig& cfg);
BlindWidths blind_widths(const PrfConfig& prf, const RadarConfig& cfg);

// Rejects a PRF with a non-positive frequency, negative clutter, or an empty
// clear region in range or Doppler.
void validate_prf(const PrfConfig& prf, const RadarConfig& cfg);

bool is_trackable(const TrackTask& task, const PrfConfig& prf,
                  const RadarConfig& cfg);

// Unclamped availabilities (already multiplied by the trackability flag).
std::int64_t raw_leftward_availability(const TrackTask& task,
                                       const PrfConfig& prf,
                                       const RadarConfig& cfg);
std::int64_t raw_rightward_availability(const TrackTask& task,
                                        const PrfConfig& prf,
                                        const RadarConfig& cfg);

// Clamped to [0, max_interleave].
int leftward_availability(const TrackTask& task, const PrfConfig& prf,
                          const RadarConfig& cfg);
int rightward_availability(const TrackTask& task, const PrfConfig& prf,
                           const RadarConfig& cfg);

// Eight PRFs evenly spaced 9.5-16.5 kHz; 2 km / 2 kHz clutter at each edge,
// i.e. 4 km / 4 kHz blind zones around every fold.
std::vector<PrfConfig> default_prf_set();

struct Availability {
  double ambiguous_range = 0.0;
  bool trackable = false;
  std::uint8_t left = 0;
  std::uint8_t right = 0;
};

// Availabilities for every (task, PRF) pair plus the K_p / P_i incidence.
class AvailabilityTable {
 public:
  AvailabilityTable() = default;
  static AvailabilityTable build(std::span<const TrackTask> tasks,
                                 std::span<const PrfConfig> prfs,
                                 const RadarConfig& cfg);

  std::size_t task_count() const { return task_count_; }
  std::size_t prf_count() const { return prf_count_; }
  int max_interleave() const { return max_interleave_; }

  const Availability& at(TaskIndex task, PrfIndex prf) const {
    return cells_[static_cast<std::size_t>(task) * prf_count_ + prf];
  }

  // P_i: PRFs task i is trackable with, ascending.
  std::span<const PrfIndex> prfs_of(TaskIndex task) const;
  // K_p: tasks trackable with PRF p, ascending.
  std::span<const TaskIndex> tasks_of(PrfIndex prf) const;
  // Q_p = sum_p |K_p| = sum_i |P_i|.
  std::size_t membership_count() const { return task_prfs_.size(); }
  // Tasks with empty P_i; excluded from every K_p.
  std::span<const TaskIndex> unschedulable() const { return unschedulable_; }
  bool schedulable(TaskIndex task) const { return !prfs_of(task).empty(); }

 private:
  std::size_t task_count_ = 0;
  std::size_t prf_count_ = 0;
  int max_interleave_ = 0;
  std::vector<Availability> cells_;
  std::vector<std::size_t> task_offsets_;
  std::vector<PrfIndex> task_prfs_;
  std::vector<std::size_t> prf_offsets_;
  std::vector<TaskIndex> prf_tasks_;
  std::vector<TaskIndex> unschedulable_;
};

}  // namespace pulseil

#endif  // PULSEIL_RADAR_MODEL_HPP_
