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

// Task selection structures behind BackwardInterleaving. One structure is
// built per PRF (element-level DBF) or per disk (subarray-level DBF) over
// its tasks' clamped (A_l, A_r) and a frozen priority. All backends answer
// the same query: the highest-priority live task with A_l >= l_min and
// A_r >= r_min, ties broken by lowest task index.
//
// Tasks are addressed by their local slot in the build input, which lets the
// scheduler keep O(1) back-links from a task to each structure it lives in.

#ifndef PULSEIL_SELECTION_HPP_
#define PULSEIL_SELECTION_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pulseil/common.hpp"

namespace pulseil {

// Larger is better. R_task fills `secondary` with a seeded 64-bit draw.
struct PriorityKey {
  double primary = 0.0;
  std::uint64_t secondary = 0;
};

// Total order used everywhere: (primary desc, secondary desc, task asc).
bool outranks(const PriorityKey& a, TaskIndex ta, const PriorityKey& b,
              TaskIndex tb);

struct BackendItem {
  TaskIndex task = 0;
  int left = 0;   // clamped A_l in [0, N_intlv]
  int right = 0;  // clamped A_r in [1, N_intlv]
  PriorityKey priority;
};

enum class BackendKind { kBrute, kPairwise, kRangeTree };

std::string_view to_string(BackendKind kind);
std::optional<BackendKind> parse_backend_kind(std::string_view text);

struct BackendStats {
  std::uint64_t build_entries = 0;
  std::uint64_t queries = 0;
  std::uint64_t node_visits = 0;
  std::uint64_t max_query_visits = 0;
  std::uint64_t deletions = 0;
  std::uint64_t deletion_touches = 0;
  std::uint64_t max_deletion_touches = 0;

  void merge(const BackendStats& other);
};

using LocalSlot = std::uint32_t;

class SelectionBackend {
 public:
  virtual ~SelectionBackend() = default;

  virtual BackendKind kind() const = 0;
  // Highest-priority live task with A_l >= l_min and A_r >= r_min.
  virtual std::optional<LocalSlot> best_in(int l_min, int r_min) = 0;
  // True iff some live task has A_l >= l_min.
  virtual bool has_left(int l_min) = 0;
  // Idempotent.
  virtual void erase(LocalSlot slot) = 0;

  bool live(LocalSlot slot) const { return live_[slot]; }
  std::size_t live_count() const { return live_count_; }
  std::size_t size() const { return items_.size(); }
  const BackendItem& item(LocalSlot slot) const { return items_[slot]; }
  TaskIndex task_at(LocalSlot slot) const { return items_[slot].task; }
  // Local slot of a task, by binary search over the build order.
  std::optional<LocalSlot> slot_of(TaskIndex task) const;
  int max_interleave() const { return max_interleave_; }
  const BackendStats& stats() const { return stats_; }

  // Indented text view of the internal structure for debugging.
  virtual std::string dump() const = 0;

 protected:
  SelectionBackend(std::span<const BackendItem> items, int max_interleave);

  // Build-order ranks: rank 0 is the best task.
  std::vector<std::uint32_t> rank_order() const;
  bool mark_dead(LocalSlot slot);

  std::vector<BackendItem> items_;
  std::vector<std::uint32_t> rank_;  // rank_[slot]
  std::vector<bool> live_;
  std::size_t live_count_ = 0;
  int max_interleave_;
  BackendStats stats_;
};

// Items must be sorted by ascending task index with unique tasks.
std::unique_ptr<SelectionBackend> make_backend(BackendKind kind,
                                               std::span<const BackendItem> items,
                                               int max_interleave);

// Unsorted live list; every query scans it.
class BruteBackend final : public SelectionBackend {
 public:
  BruteBackend(std::span<const BackendItem> items, int max_interleave);
  BackendKind kind() const override { return BackendKind::kBrute; }
  std::optional<LocalSlot> best_in(int l_min, int r_min) override;
  bool has_left(int l_min) override;
  void erase(LocalSlot slot) override;
  std::string dump() const override;

 private:
  std::vector<LocalSlot> order_;
  std::vector<std::uint32_t> pos_;
};

// One priority-sorted linked sequence per reachable threshold pair (a, b):
// a >= 0, b >= 1, a + b <= N_intlv. A task is in sequence (a, b) iff
// A_l >= a and A_r >= b, and keeps back-links to each of its entries.
class PairwiseListsBackend final : public SelectionBackend {
 public:
  PairwiseListsBackend(std::span<const BackendItem> items, int max_interleave);
  BackendKind kind() const override { return BackendKind::kPairwise; }
  std::optional<LocalSlot> best_in(int l_min, int r_min) override;
  bool has_left(int l_min) override;
  void erase(LocalSlot slot) override;
  std::string dump() const override;

  std::size_t sequence_count() const { return heads_.size(); }
  std::size_t total_entries() const { return entry_slot_.size(); }

 private:
  std::int32_t sequence_index(int a, int b) const;

  std::vector<std::int32_t> heads_;
  std::vector<LocalSlot> entry_slot_;
  std::vector<std::int32_t> next_;
  std::vector<std::int32_t> prev_;
  std::vector<std::int32_t> entry_sequence_;
  std::vector<std::uint32_t> slot_offsets_;  // entries of slot s are contiguous
};

// Static shape shared by all range trees with the same N_intlv.
//
// Level 1 keys A_l over {0..N}: the root splits {0} from a balanced
// leaf-oriented tree over {1..N}; the root itself stores nothing. Level 2
// keys A_r over {1..N} with a balanced leaf-oriented tree whose nodes all
// store. Depths are counted in edges from the root.
struct RangeTreeShape {
  struct Node {
    int lo = 0;
    int hi = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  explicit RangeTreeShape(int max_interleave);

  int max_interleave;
  std::vector<Node> level1;  // index 0 = leaf {0}; index 1 = root of {1..N}
  std::vector<Node> level2;  // index 0 = root of {1..N}
  int level1_depth = 0;
  int level2_depth = 0;

  // Canonical stored nodes covering [a, N] (level 1) / [b, N] (level 2).
  void cover_level1(int a, std::vector<std::int32_t>& out) const;
  void cover_level2(int b, std::vector<std::int32_t>& out) const;
  // Stored nodes whose key range contains the key.
  void path_level1(int key, std::vector<std::int32_t>& out) const;
  void path_level2(int key, std::vector<std::int32_t>& out) const;
};

// Three-level orthogonal range tree: A_l tree, A_r auxiliary trees, and
// priority-sorted task sequences at the last level. Only nonempty
// sequences are materialized.
class RangeTreeBackend final : public SelectionBackend {
 public:
  RangeTreeBackend(std::span<const BackendItem> items, int max_interleave);
  BackendKind kind() const override { return BackendKind::kRangeTree; }
  std::optional<LocalSlot> best_in(int l_min, int r_min) override;
  bool has_left(int l_min) override;
  void erase(LocalSlot slot) override;
  std::string dump() const override;

  const RangeTreeShape& shape() const { return *shape_; }
  // Largest number of level-3 sequences any single task belongs to.
  std::size_t max_sequences_per_task() const;
  std::size_t sequence_count() const { return list_ids_.size(); }

 private:
  std::int32_t find_list(std::uint32_t list_id) const;
  std::uint32_t list_id(std::int32_t n1, std::int32_t n2) const {
    return static_cast<std::uint32_t>(n1) *
               static_cast<std::uint32_t>(shape_->level2.size()) +
           static_cast<std::uint32_t>(n2);
  }

  std::shared_ptr<const RangeTreeShape> shape_;
  std::vector<std::uint32_t> list_ids_;   // sorted, nonempty lists only
  std::vector<std::int32_t> heads_;       // parallel to list_ids_
  std::vector<LocalSlot> entry_slot_;
  std::vector<std::int32_t> next_;
  std::vector<std::int32_t> prev_;
  std::vector<std::int32_t> entry_list_;
  std::vector<std::uint32_t> slot_offsets_;
  std::vector<std::int32_t> slot_entries_;
  std::vector<std::int32_t> scratch1_;
  std::vector<std::int32_t> scratch2_;
};

}  // namespace pulseil

#endif  // PULSEIL_SELECTION_HPP_
