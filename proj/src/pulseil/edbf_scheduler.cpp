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

#include "pulseil/edbf_scheduler.hpp"

#include <memory>
#include <random>

#include "pulseil/bucket_list.hpp"

namespace pulseil {

TaskPriorities::TaskPriorities(TaskRule rule, std::span<const TrackTask> tasks,
                               const AvailabilityTable& table,
                               std::uint64_t seed)
    : rule_(rule), table_(&table) {
  const std::size_t n = table.task_count();
  static_value_.assign(n, 0.0);
  random_value_.assign(n, 0);
  for (TaskIndex i = 0; i < n; ++i) {
    double left_sum = 0.0;
    double right_sum = 0.0;
    for (PrfIndex p : table.prfs_of(i)) {
      left_sum += table.at(i, p).left;
      right_sum += table.at(i, p).right;
    }
    switch (rule) {
      case TaskRule::kSap:
        static_value_[i] = -static_cast<double>(table.prfs_of(i).size());
        break;
      case TaskRule::kSla:
        static_value_[i] = -left_sum;
        break;
      case TaskRule::kSra:
        static_value_[i] = -right_sum;
        break;
      case TaskRule::kRandom:
        random_value_[i] = mix64(seed ^ kTaskStream ^
                                 mix64(static_cast<std::uint64_t>(tasks[i].id)));
        break;
      default:
        break;
    }
  }
}

PriorityKey TaskPriorities::key(TaskIndex task, PrfIndex prf) const {
  switch (rule_) {
    case TaskRule::kSar:
      return {-table_->at(task, prf).ambiguous_range, 0};
    case TaskRule::kLar:
      return {table_->at(task, prf).ambiguous_range, 0};
    case TaskRule::kRandom:
      return {0.0, random_value_[task]};
    default:
      return {static_value_[task], 0};
  }
}

Schedule run_edbf(std::span<const TrackTask> tasks,
                  std::span<const PrfConfig> prfs,
                  const AvailabilityTable& table, const RadarConfig& radar,
                  const SchedulerConfig& cfg, RunStats* stats) {
  PULSEIL_CHECK(tasks.size() == table.task_count(), "task list/table mismatch");
  PULSEIL_CHECK(prfs.size() == table.prf_count(), "PRF list/table mismatch");
  const std::size_t prf_count = table.prf_count();
  const int n = table.max_interleave();

  Schedule out;
  out.config = cfg;
  out.config.mode = Mode::kEdbf;
  out.unschedulable.assign(table.unschedulable().begin(),
                           table.unschedulable().end());

  const TaskPriorities priorities(cfg.task_rule, tasks, table, cfg.seed);

  // member_slot[offset[i] + k]: local slot of task i in the structure of its
  // k-th available PRF. K_p is ascending, so the slot is a running count.
  std::vector<std::size_t> offset(table.task_count() + 1, 0);
  for (TaskIndex i = 0; i < table.task_count(); ++i) {
    offset[i + 1] = offset[i] + table.prfs_of(i).size();
  }
  std::vector<LocalSlot> member_slot(offset.back());
  std::vector<LocalSlot> fill(prf_count, 0);
  std::vector<BucketList::Key> memberships;
  memberships.reserve(offset.back());
  for (TaskIndex i = 0; i < table.task_count(); ++i) {
    const auto mine = table.prfs_of(i);
    for (std::size_t k = 0; k < mine.size(); ++k) {
      member_slot[offset[i] + k] = fill[mine[k]]++;
      memberships.push_back(mine[k]);
    }
  }

  std::vector<std::unique_ptr<SelectionBackend>> structures(prf_count);
  std::vector<BackendItem> items;
  for (PrfIndex p = 0; p < prf_count; ++p) {
    items.clear();
    for (TaskIndex i : table.tasks_of(p)) {
      const Availability& a = table.at(i, p);
      items.push_back({i, a.left, a.right, priorities.key(i, p)});
    }
    structures[p] = make_backend(cfg.backend, items, n);
  }
  BucketList buckets = BucketList::build(prf_count, memberships);

  std::mt19937_64 rng(mix64(cfg.seed ^ kPrfStream));
  BackwardInterleaver interleaver(n, cfg.enforce_iteration_bound);
  std::size_t remaining = table.task_count() - table.unschedulable().size();
  RunStats local;
  std::uint64_t ops_mark = buckets.operations();

  while (remaining > 0) {
    std::optional<BucketList::Key> pick;
    switch (cfg.prf_rule) {
      case PrfRule::kGreedy:
        pick = buckets.select_max(BucketList::Tie::kLowestKey);
        break;
      case PrfRule::kReverseGreedy:
        pick = buckets.select_min_positive(BucketList::Tie::kLowestKey);
        break;
      case PrfRule::kRandom:
        pick = buckets.select_random_positive(rng);
        break;
    }
    PULSEIL_CHECK(pick.has_value(), "no PRF with unscheduled tasks");
    local.note_selection(buckets.operations() - ops_mark + 1);
    const PrfIndex p = *pick;
    SelectionBackend& live = *structures[p];
    PULSEIL_CHECK(live.live_count() > 0, "selected PRF has no live tasks");

    const auto placed = interleaver.schedule_look(live);
    PULSEIL_CHECK(!placed.empty(), "look scheduled no task");

    ScheduledLook look;
    look.prf = p;
    look.frequency = prfs[p].frequency;
    look.dwell = look_dwell(prfs[p], radar);
    for (const SlotAssignment& s : placed) {
      const TaskIndex i = live.task_at(s.slot);
      look.placements.push_back({i, s.position});
      const auto mine = table.prfs_of(i);
      for (std::size_t k = 0; k < mine.size(); ++k) {
        structures[mine[k]]->erase(member_slot[offset[i] + k]);
        const std::uint64_t before = buckets.operations();
        buckets.decrement(mine[k]);
        local.note_update(buckets.operations() - before);
      }
    }
    ops_mark = buckets.operations();
    remaining -= placed.size();
    out.looks.push_back(std::move(look));
  }

  if (stats != nullptr) {
    local.interleave = interleaver.stats();
    for (const auto& s : structures) local.backend.merge(s->stats());
    local.membership_count = table.membership_count();
    stats->merge_counters(local);
    stats->membership_count = local.membership_count;
  }
  return out;
}

}  // namespace pulseil
