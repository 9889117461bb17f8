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

#include "pulseil/ip_instance.hpp"

#include <algorithm>
#include <sstream>

namespace pulseil {

std::optional<std::uint32_t> IpInstance::row_of(TaskIndex task) const {
  if (task >= row_index_.size() || row_index_[task] < 0) return std::nullopt;
  return static_cast<std::uint32_t>(row_index_[task]);
}

const IpCell* IpInstance::cell(std::uint32_t row, std::uint32_t group) const {
  const auto& cells = groups_[group].cells;
  auto it = std::lower_bound(
      cells.begin(), cells.end(), row,
      [](const IpCell& c, std::uint32_t r) { return c.row < r; });
  if (it == cells.end() || it->row != row) return nullptr;
  return &*it;
}

std::optional<std::uint32_t> IpInstance::group_of_disk(DiskId d) const {
  if (d >= disk_group_.size() || disk_group_[d] < 0) return std::nullopt;
  return static_cast<std::uint32_t>(disk_group_[d]);
}

std::optional<std::uint32_t> IpInstance::group_of_prf(PrfIndex p) const {
  if (p >= prf_group_.size() || prf_group_[p] < 0) return std::nullopt;
  return static_cast<std::uint32_t>(prf_group_[p]);
}

int IpInstance::big_m() const {
  int max_left = 0;
  for (const IpGroup& g : groups_) {
    for (const IpCell& c : g.cells) max_left = std::max<int>(max_left, c.left);
  }
  return max_interleave_ + max_left + 1;
}

std::uint64_t IpInstance::variable_count() const {
  const std::uint64_t nl = looks_.size();
  return rows_.size() * nl * static_cast<std::uint64_t>(max_interleave_) + nl;
}

IpInstance IpInstance::edbf(const AvailabilityTable& table,
                            std::span<const double> prf_dwell,
                            const InstanceOptions& options) {
  if (prf_dwell.size() != table.prf_count()) {
    throw InvalidInput("instance: one dwell time per PRF is required");
  }
  IpInstance inst;
  inst.mode_ = Mode::kEdbf;
  inst.max_interleave_ = table.max_interleave();
  inst.prf_dwell_.assign(prf_dwell.begin(), prf_dwell.end());
  inst.prf_group_.assign(table.prf_count(), -1);
  for (PrfIndex p = 0; p < table.prf_count(); ++p) {
    IpGroup g;
    g.prf = p;
    g.dwell = prf_dwell[p];
    for (TaskIndex i : table.tasks_of(p)) {
      const Availability& a = table.at(i, p);
      g.cells.push_back({i, a.left, a.right});
    }
    inst.prf_group_[p] = static_cast<std::int64_t>(inst.groups_.size());
    inst.groups_.push_back(std::move(g));
  }
  inst.finish(table, options, {});
  return inst;
}

IpInstance IpInstance::sdbf(const AvailabilityTable& table,
                            const DiskCatalog& catalog,
                            std::span<const double> prf_dwell,
                            const InstanceOptions& options) {
  if (prf_dwell.size() != table.prf_count()) {
    throw InvalidInput("instance: one dwell time per PRF is required");
  }
  IpInstance inst;
  inst.mode_ = Mode::kSdbf;
  inst.max_interleave_ = table.max_interleave();
  inst.prf_dwell_.assign(prf_dwell.begin(), prf_dwell.end());
  inst.disk_group_.assign(catalog.disk_count(), -1);
  std::vector<std::uint32_t> default_copies;
  for (const Disk& d : catalog.disks()) {
    IpGroup g;
    g.prf = d.prf;
    g.dwell = prf_dwell[d.prf];
    g.disk = d.id;
    g.grid = d.grid;
    g.center = d.center;
    for (TaskIndex i : d.tasks) {
      const Availability& a = table.at(i, d.prf);
      g.cells.push_back({i, a.left, a.right});
    }
    default_copies.push_back(static_cast<std::uint32_t>(d.tasks.size()));
    inst.disk_group_[d.id] = static_cast<std::int64_t>(inst.groups_.size());
    inst.groups_.push_back(std::move(g));
  }
  inst.finish(table, options, default_copies);
  return inst;
}

// Cells arrive keyed by task index; this picks the task rows, remaps the
// cells and lays out the look copies.
void IpInstance::finish(const AvailabilityTable& table,
                        const InstanceOptions& options,
                        const std::vector<std::uint32_t>& default_copies) {
  const std::size_t n = table.task_count();
  std::vector<bool> covered(n, false);
  for (const IpGroup& g : groups_) {
    for (const IpCell& c : g.cells) covered[c.row] = true;
  }
  row_index_.assign(n, -1);
  for (TaskIndex i = 0; i < n; ++i) {
    if (covered[i]) {
      row_index_[i] = static_cast<std::int64_t>(rows_.size());
      rows_.push_back(i);
    } else {
      excluded_.push_back(i);
    }
  }
  if (!excluded_.empty() && !options.exclude_unschedulable) {
    std::ostringstream os;
    os << "instance: " << excluded_.size()
       << " task(s) have no available look (first index " << excluded_[0]
       << ")";
    throw InvalidInput(os.str());
  }
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    IpGroup& g = groups_[gi];
    for (IpCell& c : g.cells) c.row = static_cast<std::uint32_t>(row_index_[c.row]);
    std::uint32_t copies = options.copies;
    if (copies == 0) {
      copies = default_copies.empty()
                   ? static_cast<std::uint32_t>(rows_.size())
                   : default_copies[gi];
    }
    g.copies = copies;
    g.first_look = static_cast<std::uint32_t>(looks_.size());
    for (std::uint32_t c = 0; c < copies; ++c) {
      looks_.push_back({static_cast<std::uint32_t>(gi), c});
    }
  }
}

namespace {

std::string look_label(std::size_t j) { return "look " + std::to_string(j); }

}  // namespace

std::vector<Violation> check_feasible(const Schedule& schedule,
                                      const IpInstance& instance) {
  std::vector<Violation> out;
  auto report = [&](std::string c, std::string detail) {
    out.push_back({std::move(c), std::move(detail)});
  };
  const int n = instance.max_interleave();
  std::vector<std::uint32_t> used(instance.groups().size(), 0);
  std::vector<std::uint32_t> seen(instance.task_count(), 0);

  for (std::size_t j = 0; j < schedule.looks.size(); ++j) {
    const ScheduledLook& look = schedule.looks[j];
    if (look.placements.empty()) continue;
    std::optional<std::uint32_t> group;
    if (instance.mode() == Mode::kSdbf) {
      if (!look.disk) {
        report("look", look_label(j) + " has no disk");
        continue;
      }
      group = instance.group_of_disk(*look.disk);
    } else {
      group = instance.group_of_prf(look.prf);
    }
    if (!group) {
      report("look", look_label(j) + " has no candidate group");
      continue;
    }
    const IpGroup& g = instance.groups()[*group];
    if (g.prf != look.prf) {
      report("look", look_label(j) + " PRF differs from its candidate group");
    }
    if (++used[*group] > g.copies) {
      report("look", look_label(j) + " exceeds the candidate copies of its group");
    }

    const int m = static_cast<int>(look.placements.size());
    if (m > n) {
      report("C1", look_label(j) + " holds " + std::to_string(m) + " > " +
                       std::to_string(n) + " tasks");
    }
    std::vector<int> slots;
    for (const Placement& pl : look.placements) slots.push_back(pl.slot);
    std::sort(slots.begin(), slots.end());
    for (std::size_t k = 1; k < slots.size(); ++k) {
      if (slots[k] == slots[k - 1]) {
        report("C3", look_label(j) + " slot " + std::to_string(slots[k]) +
                         " holds more than one task");
      }
    }
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (slots[k] < 1 || slots[k] > n) {
        report("C8", look_label(j) + " slot " + std::to_string(slots[k]) +
                         " outside [1, N_intlv]");
      }
    }
    {
      std::vector<int> distinct = slots;
      distinct.erase(std::unique(distinct.begin(), distinct.end()),
                     distinct.end());
      bool packed = true;
      for (std::size_t k = 0; k < distinct.size(); ++k) {
        if (distinct[k] != static_cast<int>(k) + 1) packed = false;
      }
      if (!packed) {
        report("C4", look_label(j) + " occupied slots are not 1..m");
      }
    }

    for (const Placement& pl : look.placements) {
      const std::string who =
          look_label(j) + " task index " + std::to_string(pl.task);
      const auto row = instance.row_of(pl.task);
      if (!row) {
        report("C2", who + " is not part of the instance");
        continue;
      }
      ++seen[*row];
      const IpCell* c = instance.cell(*row, *group);
      if (c == nullptr) {
        report("C5", who + " is not available in this look");
        continue;
      }
      if (pl.slot > c->right) {
        report("C6", who + " slot " + std::to_string(pl.slot) + " > A_r " +
                         std::to_string(c->right));
      }
      if (m > pl.slot + c->left) {
        report("C7", who + " look size " + std::to_string(m) + " > slot " +
                         std::to_string(pl.slot) + " + A_l " +
                         std::to_string(c->left));
      }
    }
  }
  for (std::size_t r = 0; r < seen.size(); ++r) {
    if (seen[r] != 1) {
      report("C2", "task index " + std::to_string(instance.rows()[r]) +
                       " scheduled " + std::to_string(seen[r]) + " times");
    }
  }
  return out;
}

double objective(const Schedule& schedule, const IpInstance& instance) {
  return schedule.objective(instance.prf_dwell());
}

}  // namespace pulseil
