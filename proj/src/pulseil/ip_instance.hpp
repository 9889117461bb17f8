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

// The look-assignment integer program: candidate looks, per (task, look)
// availability, and a checker for constraints C1-C8.
//
// Candidate looks come in groups. A group is one PRF (element level) or one
// disk (subarray level); its copies are interchangeable looks that share the
// PRF, dwell time and availabilities.

#ifndef PULSEIL_IP_INSTANCE_HPP_
#define PULSEIL_IP_INSTANCE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pulseil/radar_model.hpp"
#include "pulseil/scan_geometry.hpp"
#include "pulseil/schedule.hpp"

namespace pulseil {

struct IpCell {
  std::uint32_t row = 0;  // instance task row
  std::uint8_t left = 0;
  std::uint8_t right = 0;
};

struct IpGroup {
  PrfIndex prf = 0;
  double dwell = 0.0;
  std::optional<DiskId> disk;
  GridPoint grid;
  ScanPoint center;
  std::uint32_t copies = 0;
  std::uint32_t first_look = 0;
  std::vector<IpCell> cells;  // available rows, ascending
};

struct IpLook {
  std::uint32_t group = 0;
  std::uint32_t copy = 0;
};

struct InstanceOptions {
  // Drop tasks with no available look instead of failing.
  bool exclude_unschedulable = false;
  // Looks per group; 0 selects the default (N_t per PRF, |T_d| per disk).
  std::uint32_t copies = 0;
};

class IpInstance {
 public:
  Mode mode() const { return mode_; }
  int max_interleave() const { return max_interleave_; }
  std::size_t task_count() const { return rows_.size(); }
  std::size_t look_count() const { return looks_.size(); }
  std::size_t prf_count() const { return prf_dwell_.size(); }
  std::span<const TaskIndex> rows() const { return rows_; }
  std::span<const IpGroup> groups() const { return groups_; }
  std::span<const IpLook> looks() const { return looks_; }
  std::span<const double> prf_dwell() const { return prf_dwell_; }
  std::span<const TaskIndex> excluded() const { return excluded_; }

  std::optional<std::uint32_t> row_of(TaskIndex task) const;
  const IpCell* cell(std::uint32_t row, std::uint32_t group) const;
  // Group holding the given disk (subarray level) or PRF (element level).
  std::optional<std::uint32_t> group_of_disk(DiskId d) const;
  std::optional<std::uint32_t> group_of_prf(PrfIndex p) const;

  // Smallest valid big-M: N_intlv + max A_l + 1.
  int big_m() const;
  // N_t * N_l * N_intlv h variables plus N_l f variables.
  std::uint64_t variable_count() const;

  static IpInstance edbf(const AvailabilityTable& table,
                         std::span<const double> prf_dwell,
                         const InstanceOptions& options = {});
  // Uses the catalog as given; pass DiskCatalog::deduplicated() for export.
  static IpInstance sdbf(const AvailabilityTable& table,
                         const DiskCatalog& catalog,
                         std::span<const double> prf_dwell,
                         const InstanceOptions& options = {});

 private:
  void finish(const AvailabilityTable& table, const InstanceOptions& options,
              const std::vector<std::uint32_t>& default_copies);

  Mode mode_ = Mode::kEdbf;
  int max_interleave_ = 0;
  std::vector<TaskIndex> rows_;
  std::vector<std::int64_t> row_index_;  // TaskIndex -> row or -1
  std::vector<TaskIndex> excluded_;
  std::vector<IpGroup> groups_;
  std::vector<IpLook> looks_;
  std::vector<double> prf_dwell_;
  std::vector<std::int64_t> disk_group_;
  std::vector<std::int64_t> prf_group_;
};

struct Violation {
  std::string constraint;  // "C1".."C8" or "look"
  std::string detail;
};

// Empty result iff the schedule is feasible for the instance. Each schedule
// look is mapped to the next unused copy of its group.
std::vector<Violation> check_feasible(const Schedule& schedule,
                                      const IpInstance& instance);

// Sum of dwell times over used looks.
double objective(const Schedule& schedule, const IpInstance& instance);

}  // namespace pulseil

#endif  // PULSEIL_IP_INSTANCE_HPP_
