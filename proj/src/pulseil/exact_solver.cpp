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

#include "pulseil/exact_solver.hpp"

#include <algorithm>
#include <limits>

namespace pulseil {

std::optional<std::vector<int>> pack_look(std::span<const IpCell> cells,
                                          int max_interleave) {
  const int m = static_cast<int>(cells.size());
  if (m > max_interleave) return std::nullopt;
  std::vector<int> lo(m), hi(m), slot(m, 0);
  for (int t = 0; t < m; ++t) {
    lo[t] = std::max(1, m - cells[t].left);
    hi[t] = std::min(m, static_cast<int>(cells[t].right));
  }
  for (int s = 1; s <= m; ++s) {
    int best = -1;
    for (int t = 0; t < m; ++t) {
      if (slot[t] != 0 || lo[t] > s) continue;
      if (best < 0 || hi[t] < hi[best]) best = t;
    }
    if (best < 0 || hi[best] < s) return std::nullopt;
    slot[best] = s;
  }
  return slot;
}

namespace {

class Search {
 public:
  Search(const IpInstance& inst, const ExactLimits& limits)
      : inst_(inst),
        limits_(limits),
        used_(inst.groups().size(), 0),
        counts_(inst.prf_count(), 0) {}

  void run() { visit(0); }

  bool found() const { return best_value_ < kInf; }
  double best_value() const { return best_value_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>>&
  best() const {
    return best_;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  double value() const {
    return objective_from_counts(counts_, inst_.prf_dwell());
  }

  bool packs(std::uint32_t group, const std::vector<std::uint32_t>& rows) {
    scratch_.clear();
    for (std::uint32_t r : rows) scratch_.push_back(*inst_.cell(r, group));
    return pack_look(scratch_, inst_.max_interleave()).has_value();
  }

  void visit(std::uint32_t row) {
    if (++nodes_ > limits_.node_budget) {
      throw ResourceLimit("exact solver: node budget exhausted");
    }
    if (value() >= best_value_) return;
    if (row == inst_.task_count()) {
      best_value_ = value();
      best_ = open_;
      return;
    }
    for (std::size_t o = 0; o < open_.size(); ++o) {
      auto& [group, rows] = open_[o];
      if (inst_.cell(row, group) == nullptr) continue;
      if (static_cast<int>(rows.size()) >= inst_.max_interleave()) continue;
      rows.push_back(row);
      if (packs(group, rows)) visit(row + 1);
      open_[o].second.pop_back();
    }
    for (std::uint32_t g = 0; g < inst_.groups().size(); ++g) {
      const IpGroup& grp = inst_.groups()[g];
      if (used_[g] >= grp.copies || inst_.cell(row, g) == nullptr) continue;
      ++used_[g];
      ++counts_[grp.prf];
      open_.push_back({g, {row}});
      visit(row + 1);
      open_.pop_back();
      --counts_[grp.prf];
      --used_[g];
    }
  }

  const IpInstance& inst_;
  const ExactLimits& limits_;
  std::vector<std::uint32_t> used_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> open_;
  std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> best_;
  std::vector<IpCell> scratch_;
  double best_value_ = kInf;
  std::uint64_t nodes_ = 0;
};

}  // namespace

ExactResult solve_exact(const IpInstance& instance, const ExactLimits& limits) {
  if (instance.task_count() > limits.max_tasks ||
      instance.prf_count() > limits.max_prfs ||
      instance.max_interleave() > limits.max_interleave) {
    throw ResourceLimit(
        "exact solver: instance exceeds the desk-scale limits (tasks " +
        std::to_string(limits.max_tasks) + ", PRFs " +
        std::to_string(limits.max_prfs) + ", N_intlv " +
        std::to_string(limits.max_interleave) + ")");
  }
  Search search(instance, limits);
  search.run();

  ExactResult out;
  out.nodes = search.nodes();
  out.schedule.config.mode = instance.mode();
  if (!search.found()) return out;
  out.feasible = true;
  out.objective = search.best_value();
  std::vector<IpCell> cells;
  for (const auto& [group, rows] : search.best()) {
    const IpGroup& g = instance.groups()[group];
    cells.clear();
    for (std::uint32_t r : rows) cells.push_back(*instance.cell(r, group));
    const auto slots = pack_look(cells, instance.max_interleave());
    PULSEIL_CHECK(slots.has_value(), "incumbent look no longer packs");
    ScheduledLook look;
    look.prf = g.prf;
    look.dwell = g.dwell;
    look.disk = g.disk;
    look.grid = g.grid;
    look.center = g.center;
    for (std::size_t t = 0; t < rows.size(); ++t) {
      look.placements.push_back({instance.rows()[rows[t]], (*slots)[t]});
    }
    std::sort(look.placements.begin(), look.placements.end(),
              [](const Placement& a, const Placement& b) {
                return a.slot < b.slot;
              });
    out.schedule.looks.push_back(std::move(look));
  }
  out.schedule.unschedulable.assign(instance.excluded().begin(),
                                    instance.excluded().end());
  return out;
}

}  // namespace pulseil
