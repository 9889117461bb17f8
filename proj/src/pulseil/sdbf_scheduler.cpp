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

#include "pulseil/sdbf_scheduler.hpp"

#include <random>
#include <set>

#include "pulseil/bucket_list.hpp"
#include "pulseil/edbf_scheduler.hpp"

namespace pulseil {

namespace {

struct DiskKey {
  std::uint64_t main = 0;  // cardinality or fixed-point weight
  double dwell = 0.0;
  std::uint64_t random = 0;
  DiskId id = 0;
};

// Orders the best disk first. Counts comparisons so selection cost can be
// checked against the logarithmic bound.
struct DiskOrder {
  bool main_descending = true;
  bool by_dwell = true;
  std::uint64_t* comparisons = nullptr;

  bool operator()(const DiskKey& a, const DiskKey& b) const {
    ++*comparisons;
    if (a.main != b.main) {
      return main_descending ? a.main > b.main : a.main < b.main;
    }
    if (by_dwell) {
      if (a.dwell != b.dwell) return a.dwell < b.dwell;
    } else if (a.random != b.random) {
      return a.random > b.random;
    }
    return a.id < b.id;
  }
};

class DiskSelector {
 public:
  DiskSelector(const DiskCatalog& catalog, std::span<const double> dwell,
               const SchedulerConfig& cfg)
      : rule_(cfg.disk_rule),
        rng_(mix64(cfg.seed ^ kDiskStream)),
        count_(catalog.disk_count(), 0),
        weight_(catalog.disk_count(), 0),
        use_buckets_(cfg.disk_rule != DiskRule::kWeighted &&
                     cfg.sub_rule == SubRule::kRandom),
        set_(DiskOrder{cfg.disk_rule != DiskRule::kReverseGreedy,
                         cfg.sub_rule == SubRule::kSmallestDwell,
                         &comparisons_}) {
    std::vector<BucketList::Key> memberships;
    for (const Disk& d : catalog.disks()) {
      count_[d.id] = d.tasks.size();
      weight_[d.id] = d.weight;
      if (use_buckets_) {
        for (std::size_t k = 0; k < d.tasks.size(); ++k) {
          memberships.push_back(d.id);
        }
      }
    }
    if (use_buckets_) {
      buckets_ = BucketList::build(catalog.disk_count(), memberships);
      return;
    }
    keys_.resize(catalog.disk_count());
    for (const Disk& d : catalog.disks()) {
      keys_[d.id] = DiskKey{main_value(d.id), dwell[d.prf],
                            mix64(cfg.seed ^ kDiskStream ^ mix64(d.id)), d.id};
      if (count_[d.id] > 0) set_.insert(keys_[d.id]);
    }
  }

  std::optional<DiskId> select() {
    if (use_buckets_) {
      if (rule_ == DiskRule::kGreedy) {
        return buckets_.select_max(BucketList::Tie::kRandom, &rng_);
      }
      return buckets_.select_min_positive(BucketList::Tie::kRandom, &rng_);
    }
    if (set_.empty()) return std::nullopt;
    return set_.begin()->id;
  }

  // Task with `contribution` weight left disk d.
  void remove_task(DiskId d, std::uint64_t contribution) {
    PULSEIL_CHECK(count_[d] > 0, "disk cardinality underflow");
    if (use_buckets_) {
      --count_[d];
      buckets_.decrement(d);
      return;
    }
    set_.erase(keys_[d]);
    --count_[d];
    weight_[d] -= std::min(weight_[d], contribution);
    if (count_[d] == 0) return;
    keys_[d].main = main_value(d);
    set_.insert(keys_[d]);
  }

  std::uint64_t operations() const {
    return use_buckets_ ? buckets_.operations() : comparisons_;
  }
  std::size_t live(DiskId d) const { return count_[d]; }

 private:
  std::uint64_t main_value(DiskId d) const {
    return rule_ == DiskRule::kWeighted ? weight_[d] : count_[d];
  }

  DiskRule rule_;
  std::mt19937_64 rng_;
  std::vector<std::uint64_t> count_;
  std::vector<std::uint64_t> weight_;
  bool use_buckets_;
  BucketList buckets_;
  std::uint64_t comparisons_ = 0;
  std::vector<DiskKey> keys_;
  std::set<DiskKey, DiskOrder> set_;
};

}  // namespace

Schedule run_sdbf(std::span<const TrackTask> tasks,
                  std::span<const PrfConfig> prfs,
                  const AvailabilityTable& table, const DiskCatalog& catalog,
                  const RadarConfig& radar, const SchedulerConfig& cfg,
                  RunStats* stats) {
  PULSEIL_CHECK(tasks.size() == table.task_count(), "task list/table mismatch");
  PULSEIL_CHECK(prfs.size() == table.prf_count(), "PRF list/table mismatch");
  const int n = table.max_interleave();

  Schedule out;
  out.config = cfg;
  out.config.mode = Mode::kSdbf;
  out.grid = catalog.grid();
  out.unschedulable.assign(table.unschedulable().begin(),
                           table.unschedulable().end());

  const std::vector<double> dwell = look_dwells(prfs, radar);
  const TaskPriorities priorities(cfg.task_rule, tasks, table, cfg.seed);
  DiskSelector selector(catalog, dwell, cfg);

  std::vector<std::uint64_t> contribution(table.task_count(), 0);
  for (TaskIndex i = 0; i < table.task_count(); ++i) {
    const std::uint64_t m = catalog.disks_of(i).size();
    if (table.schedulable(i)) {
      PULSEIL_CHECK(m > 0, "schedulable task enclosed by no disk");
    }
    if (m > 0) contribution[i] = (kWeightScale + m / 2) / m;
  }

  std::vector<bool> done(table.task_count(), false);
  std::size_t remaining = table.task_count() - table.unschedulable().size();
  BackwardInterleaver interleaver(n, cfg.enforce_iteration_bound);
  RunStats local;
  std::vector<BackendItem> items;
  std::uint64_t ops_mark = selector.operations();

  while (remaining > 0) {
    const std::optional<DiskId> pick = selector.select();
    PULSEIL_CHECK(pick.has_value(), "no disk with unscheduled tasks");
    local.note_selection(selector.operations() - ops_mark + 1);
    const Disk& disk = catalog.disk(*pick);
    PULSEIL_CHECK(selector.live(disk.id) > 0, "selected disk is empty");

    // Structures are built when a disk is selected, over its live tasks.
    items.clear();
    for (TaskIndex i : disk.tasks) {
      if (done[i]) continue;
      const Availability& a = table.at(i, disk.prf);
      items.push_back({i, a.left, a.right, priorities.key(i, disk.prf)});
    }
    PULSEIL_CHECK(items.size() == selector.live(disk.id),
                  "disk cardinality out of sync with its task list");
    auto live = make_backend(cfg.backend, items, n);
    const auto placed = interleaver.schedule_look(*live);
    PULSEIL_CHECK(!placed.empty(), "look scheduled no task");

    ScheduledLook look;
    look.prf = disk.prf;
    look.frequency = prfs[disk.prf].frequency;
    look.dwell = dwell[disk.prf];
    look.disk = disk.id;
    look.grid = disk.grid;
    look.center = disk.center;
    for (const SlotAssignment& s : placed) {
      const TaskIndex i = live->task_at(s.slot);
      look.placements.push_back({i, s.position});
      done[i] = true;
      for (DiskId d : catalog.disks_of(i)) {
        const std::uint64_t before = selector.operations();
        selector.remove_task(d, contribution[i]);
        local.note_update(selector.operations() - before);
      }
    }
    local.backend.merge(live->stats());
    ops_mark = selector.operations();
    remaining -= placed.size();
    out.looks.push_back(std::move(look));
  }

  if (stats != nullptr) {
    local.interleave = interleaver.stats();
    stats->merge_counters(local);
    stats->disk_count = catalog.disk_count();
    stats->membership_count = catalog.membership_count();
  }
  return out;
}

}  // namespace pulseil
