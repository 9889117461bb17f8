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

#include "pulseil/scan_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pulseil {

void GridSpec::validate() const {
  if (!(spacing > 0.0)) throw InvalidInput("grid: spacing must be > 0");
  if (!(spacing <= disk_radius)) {
    throw InvalidInput("grid: spacing must not exceed the disk radius");
  }
  if (!(disk_radius < 1.0)) throw InvalidInput("grid: disk radius must be < 1");
}

ScanPoint grid_center(GridPoint g, const GridSpec& grid) {
  return ScanPoint{static_cast<double>(g.iu) * grid.spacing,
                   static_cast<double>(g.iv) * grid.spacing};
}

bool encloses(ScanPoint center, ScanPoint q, double radius) {
  const double du = center.u - q.u;
  const double dv = center.v - q.v;
  return du * du + dv * dv <= radius * radius;
}

ScanPoint project_to_scan_plane(double azimuth, double elevation) {
  const double forward = std::cos(elevation) * std::cos(azimuth);
  if (!(forward >= 0.0)) {
    throw InvalidInput("scan plane: direction lies in the rear hemisphere");
  }
  return ScanPoint{std::cos(elevation) * std::sin(azimuth),
                   std::sin(elevation)};
}

DiskCatalog DiskCatalog::build(const AvailabilityTable& table,
                               std::span<const TrackTask> tasks,
                               const GridSpec& grid) {
  grid.validate();
  if (tasks.size() != table.task_count()) {
    throw InvalidInput("disk catalog: task list does not match table");
  }
  const double eps = grid.spacing;
  const double r = grid.disk_radius;

  std::vector<std::map<GridPoint, std::vector<TaskIndex>>> centers(
      table.prf_count());
  for (PrfIndex p = 0; p < table.prf_count(); ++p) {
    for (TaskIndex i : table.tasks_of(p)) {
      const ScanPoint q = tasks[i].point;
      // Row intervals of candidate centers, widened by one lattice step so
      // floor/ceil rounding can never drop a point the exact test accepts.
      const auto iu_lo = static_cast<std::int64_t>(std::floor((q.u - r) / eps)) - 1;
      const auto iu_hi = static_cast<std::int64_t>(std::ceil((q.u + r) / eps)) + 1;
      for (std::int64_t iu = iu_lo; iu <= iu_hi; ++iu) {
        const double du = static_cast<double>(iu) * eps - q.u;
        if (std::fabs(du) > r + eps) continue;
        const double half = std::sqrt(std::max(0.0, r * r - du * du));
        const auto iv_lo =
            static_cast<std::int64_t>(std::floor((q.v - half) / eps)) - 1;
        const auto iv_hi =
            static_cast<std::int64_t>(std::ceil((q.v + half) / eps)) + 1;
        for (std::int64_t iv = iv_lo; iv <= iv_hi; ++iv) {
          const GridPoint g{iu, iv};
          if (encloses(grid_center(g, grid), q, r)) centers[p][g].push_back(i);
        }
      }
    }
  }

  DiskCatalog cat;
  cat.grid_ = grid;
  cat.per_prf_.resize(table.prf_count());
  for (PrfIndex p = 0; p < table.prf_count(); ++p) {
    for (auto& [g, members] : centers[p]) {
      Disk d;
      d.id = static_cast<DiskId>(cat.disks_.size());
      d.prf = p;
      d.grid = g;
      d.center = grid_center(g, grid);
      d.tasks = std::move(members);
      cat.per_prf_[p].emplace(g, d.id);
      cat.disks_.push_back(std::move(d));
    }
  }
  cat.index_tasks(tasks.size());
  return cat;
}

void DiskCatalog::index_tasks(std::size_t task_count) {
  std::vector<std::size_t> counts(task_count, 0);
  for (const Disk& d : disks_) {
    for (TaskIndex i : d.tasks) ++counts[i];
  }
  task_offsets_.assign(task_count + 1, 0);
  for (std::size_t i = 0; i < task_count; ++i) {
    task_offsets_[i + 1] = task_offsets_[i] + counts[i];
  }
  task_disks_.resize(task_offsets_[task_count]);
  std::vector<std::size_t> fill(task_offsets_.begin(), task_offsets_.end() - 1);
  for (const Disk& d : disks_) {
    for (TaskIndex i : d.tasks) task_disks_[fill[i]++] = d.id;
  }
  for (Disk& d : disks_) {
    d.weight = 0;
    for (TaskIndex i : d.tasks) {
      const std::uint64_t n = counts[i];
      d.weight += (kWeightScale + n / 2) / n;
    }
  }
}

std::span<const DiskId> DiskCatalog::disks_of(TaskIndex task) const {
  return std::span<const DiskId>(task_disks_).subspan(
      task_offsets_[task], task_offsets_[task + 1] - task_offsets_[task]);
}

std::optional<DiskId> DiskCatalog::find(PrfIndex prf, GridPoint g) const {
  if (prf >= per_prf_.size()) return std::nullopt;
  auto it = per_prf_[prf].find(g);
  if (it == per_prf_[prf].end()) return std::nullopt;
  return it->second;
}

DiskCatalog DiskCatalog::deduplicated() const {
  std::vector<bool> keep(disks_.size(), true);
  for (PrfIndex p = 0; p < per_prf_.size(); ++p) {
    std::vector<DiskId> ids;
    for (const auto& [g, id] : per_prf_[p]) ids.push_back(id);
    // Larger lists first; among equal lists the lowest id comes first.
    std::sort(ids.begin(), ids.end(), [&](DiskId a, DiskId b) {
      if (disks_[a].tasks.size() != disks_[b].tasks.size()) {
        return disks_[a].tasks.size() > disks_[b].tasks.size();
      }
      return a < b;
    });
    std::vector<DiskId> survivors;
    for (DiskId d : ids) {
      const auto& mine = disks_[d].tasks;
      const bool covered = std::any_of(
          survivors.begin(), survivors.end(), [&](DiskId s) {
            const auto& theirs = disks_[s].tasks;
            return std::includes(theirs.begin(), theirs.end(), mine.begin(),
                                 mine.end());
          });
      if (covered) {
        keep[d] = false;
      } else {
        survivors.push_back(d);
      }
    }
  }

  DiskCatalog out;
  out.grid_ = grid_;
  out.per_prf_.resize(per_prf_.size());
  for (const Disk& d : disks_) {
    if (!keep[d.id]) continue;
    Disk copy = d;
    copy.id = static_cast<DiskId>(out.disks_.size());
    out.per_prf_[copy.prf].emplace(copy.grid, copy.id);
    out.disks_.push_back(std::move(copy));
  }
  out.index_tasks(task_offsets_.empty() ? 0 : task_offsets_.size() - 1);
  return out;
}

}  // namespace pulseil
