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

// Normalized scanning plane and the grid-centered re-steering disks used by
// subarray-level beamforming. A disk is identified by (PRF, grid point) and
// lists every task trackable with that PRF whose scan point it encloses.

#ifndef PULSEIL_SCAN_GEOMETRY_HPP_
#define PULSEIL_SCAN_GEOMETRY_HPP_

#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pulseil/common.hpp"
#include "pulseil/radar_model.hpp"

namespace pulseil {

struct GridSpec {
  double spacing = 0.02;      // epsilon, direction-cosine units
  double disk_radius = 0.05;  // r, direction-cosine units

  void validate() const;
};

// Lattice coordinates; the center is (iu * spacing, iv * spacing).
struct GridPoint {
  std::int64_t iu = 0;
  std::int64_t iv = 0;
  auto operator<=>(const GridPoint&) const = default;
};

ScanPoint grid_center(GridPoint g, const GridSpec& grid);

// Boundary-inclusive Euclidean enclosure test on the (u, v) plane.
bool encloses(ScanPoint center, ScanPoint q, double radius);

// u = cos(el) sin(az), v = sin(el). Rejects rear-hemisphere directions.
ScanPoint project_to_scan_plane(double azimuth, double elevation);

// Fixed-point scale of WGD weights: a task with d available disks
// contributes round(kWeightScale / d).
inline constexpr std::uint64_t kWeightScale = std::uint64_t{1} << 40;

// Upper constant in N_{d,p} <= C (r / eps)^2 |K_p|; the lattice-point bound
// pi (r + eps / sqrt 2)^2 / eps^2 stays below it whenever eps <= r.
inline constexpr double kDiskCountConstant = 3.0 * std::numbers::pi;

struct Disk {
  DiskId id = 0;
  PrfIndex prf = 0;
  GridPoint grid;
  ScanPoint center;
  std::vector<TaskIndex> tasks;  // T_d, ascending
  std::uint64_t weight = 0;      // sum of kWeightScale / |P'_i| over T_d
};

class DiskCatalog {
 public:
  DiskCatalog() = default;

  // Every grid point within r of a trackable task's scan point becomes a disk
  // center for that PRF. Disk ids follow (prf, iu, iv) order.
  static DiskCatalog build(const AvailabilityTable& table,
                           std::span<const TrackTask> tasks,
                           const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  std::size_t prf_count() const { return per_prf_.size(); }
  std::span<const Disk> disks() const { return disks_; }
  const Disk& disk(DiskId d) const { return disks_[d]; }
  std::size_t disk_count() const { return disks_.size(); }
  std::size_t disk_count(PrfIndex prf) const { return per_prf_[prf].size(); }

  // P'_i: disks enclosing task i across all PRFs, ascending ids.
  std::span<const DiskId> disks_of(TaskIndex task) const;
  // Q_d = sum_d |K_d| = sum_i |P'_i|.
  std::size_t membership_count() const { return task_disks_.size(); }

  // Lexicographic lookup of the disk at (prf, grid point).
  std::optional<DiskId> find(PrfIndex prf, GridPoint g) const;

  // Keeps only disks whose task lists are neither duplicates nor proper
  // subsets of another disk of the same PRF; the lowest id survives a tie.
  // Ids are renumbered densely. Only the IP export path uses this.
  DiskCatalog deduplicated() const;

 private:
  void index_tasks(std::size_t task_count);

  GridSpec grid_;
  std::vector<Disk> disks_;
  std::vector<std::map<GridPoint, DiskId>> per_prf_;
  std::vector<std::size_t> task_offsets_;
  std::vector<DiskId> task_disks_;
};

}  // namespace pulseil

#endif  // PULSEIL_SCAN_GEOMETRY_HPP_
