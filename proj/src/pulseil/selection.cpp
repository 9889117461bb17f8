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

#include "pulseil/selection.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace pulseil {

bool outranks(const PriorityKey& a, TaskIndex ta, const PriorityKey& b,
              TaskIndex tb) {
  if (a.primary != b.primary) return a.primary > b.primary;
  if (a.secondary != b.secondary) return a.secondary > b.secondary;
  return ta < tb;
}

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::kBrute:
      return "brute";
    case BackendKind::kPairwise:
      return "pairwise";
    case BackendKind::kRangeTree:
      return "rangetree";
  }
  return "?";
}

std::optional<BackendKind> parse_backend_kind(std::string_view text) {
  if (text == "brute") return BackendKind::kBrute;
  if (text == "pairwise") return BackendKind::kPairwise;
  if (text == "rangetree") return BackendKind::kRangeTree;
  return std::nullopt;
}

void BackendStats::merge(const BackendStats& other) {
  build_entries += other.build_entries;
  queries += other.queries;
  node_visits += other.node_visits;
  max_query_visits = std::max(max_query_visits, other.max_query_visits);
  deletions += other.deletions;
  deletion_touches += other.deletion_touches;
  max_deletion_touches =
      std::max(max_deletion_touches, other.max_deletion_touches);
}

SelectionBackend::SelectionBackend(std::span<const BackendItem> items,
                                   int max_interleave)
    : items_(items.begin(), items.end()),
      live_(items.size(), true),
      live_count_(items.size()),
      max_interleave_(max_interleave) {
  if (max_interleave < 1) throw InvalidInput("backend: N_intlv must be >= 1");
  for (std::size_t s = 0; s < items_.size(); ++s) {
    const BackendItem& it = items_[s];
    if (s > 0 && !(items_[s - 1].task < it.task)) {
      throw InvalidInput("backend: items must have strictly ascending tasks");
    }
    if (it.left < 0 || it.left > max_interleave || it.right < 1 ||
        it.right > max_interleave) {
      throw InvalidInput("backend: availability outside the clamped range");
    }
  }
  const std::vector<std::uint32_t> order = rank_order();
  rank_.assign(items_.size(), 0);
  for (std::uint32_t r = 0; r < order.size(); ++r) rank_[order[r]] = r;
}

std::vector<std::uint32_t> SelectionBackend::rank_order() const {
  std::vector<std::uint32_t> order(items_.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return outranks(items_[a].priority, items_[a].task, items_[b].priority,
                    items_[b].task);
  });
  return order;
}

bool SelectionBackend::mark_dead(LocalSlot slot) {
  PULSEIL_CHECK(slot < items_.size(), "slot out of range");
  if (!live_[slot]) return false;
  live_[slot] = false;
  --live_count_;
  ++stats_.deletions;
  return true;
}

std::optional<LocalSlot> SelectionBackend::slot_of(TaskIndex task) const {
  auto it = std::lower_bound(
      items_.begin(), items_.end(), task,
      [](const BackendItem& item, TaskIndex t) { return item.task < t; });
  if (it == items_.end() || it->task != task) return std::nullopt;
  return static_cast<LocalSlot>(it - items_.begin());
}

std::unique_ptr<SelectionBackend> make_backend(
    BackendKind kind, std::span<const BackendItem> items, int max_interleave) {
  switch (kind) {
    case BackendKind::kBrute:
      return std::make_unique<BruteBackend>(items, max_interleave);
    case BackendKind::kPairwise:
      return std::make_unique<PairwiseListsBackend>(items, max_interleave);
    case BackendKind::kRangeTree:
      return std::make_unique<RangeTreeBackend>(items, max_interleave);
  }
  throw InvalidInput("unknown backend kind");
}

namespace {

void note_query(BackendStats& stats, std::uint64_t visits) {
  ++stats.queries;
  stats.node_visits += visits;
  stats.max_query_visits = std::max(stats.max_query_visits, visits);
}

void note_deletion(BackendStats& stats, std::uint64_t touches) {
  stats.deletion_touches += touches;
  stats.max_deletion_touches = std::max(stats.max_deletion_touches, touches);
}

void unlink(std::vector<std::int32_t>& heads, std::vector<std::int32_t>& next,
            std::vector<std::int32_t>& prev, std::int32_t list,
            std::int32_t e) {
  if (prev[e] >= 0) {
    next[prev[e]] = next[e];
  } else {
    heads[list] = next[e];
  }
  if (next[e] >= 0) prev[next[e]] = prev[e];
  next[e] = prev[e] = -1;
}

}  // namespace

// ---------------------------------------------------------------- brute

BruteBackend::BruteBackend(std::span<const BackendItem> items,
                           int max_interleave)
    : SelectionBackend(items, max_interleave) {
  order_.resize(items_.size());
  std::iota(order_.begin(), order_.end(), 0u);
  pos_ = order_;
  stats_.build_entries = items_.size();
}

std::optional<LocalSlot> BruteBackend::best_in(int l_min, int r_min) {
  std::optional<LocalSlot> best;
  for (LocalSlot s : order_) {
    const BackendItem& it = items_[s];
    if (it.left < l_min || it.right < r_min) continue;
    if (!best || rank_[s] < rank_[*best]) best = s;
  }
  note_query(stats_, order_.size());
  return best;
}

bool BruteBackend::has_left(int l_min) {
  std::uint64_t visits = 0;
  bool found = false;
  for (LocalSlot s : order_) {
    ++visits;
    if (items_[s].left >= l_min) {
      found = true;
      break;
    }
  }
  note_query(stats_, visits);
  return found;
}

void BruteBackend::erase(LocalSlot slot) {
  if (!mark_dead(slot)) return;
  const std::uint32_t p = pos_[slot];
  const LocalSlot last = order_.back();
  order_[p] = last;
  pos_[last] = p;
  order_.pop_back();
  note_deletion(stats_, 1);
}

std::string BruteBackend::dump() const {
  std::ostringstream os;
  os << "brute live=" << live_count_ << "\n";
  for (LocalSlot s : order_) {
    os << "  task " << items_[s].task << " al=" << items_[s].left
       << " ar=" << items_[s].right << " rank=" << rank_[s] << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- pairwise

std::int32_t PairwiseListsBackend::sequence_index(int a, int b) const {
  const int n = max_interleave_;
  // Sequences for a given a hold b = 1..n-a; rows before a hold sum (n - a').
  return a * n - a * (a - 1) / 2 + (b - 1);
}

PairwiseListsBackend::PairwiseListsBackend(std::span<const BackendItem> items,
                                           int max_interleave)
    : SelectionBackend(items, max_interleave) {
  const int n = max_interleave_;
  heads_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, -1);
  std::vector<std::int32_t> tails(heads_.size(), -1);

  slot_offsets_.assign(items_.size() + 1, 0);
  for (std::size_t s = 0; s < items_.size(); ++s) {
    std::uint32_t count = 0;
    for (int a = 0; a <= items_[s].left && a < n; ++a) {
      count += static_cast<std::uint32_t>(std::min(items_[s].right, n - a));
    }
    slot_offsets_[s + 1] = slot_offsets_[s] + count;
  }
  const std::size_t total = slot_offsets_.back();
  entry_slot_.resize(total);
  next_.assign(total, -1);
  prev_.assign(total, -1);
  entry_sequence_.resize(total);

  for (LocalSlot s : rank_order()) {
    std::int32_t e = static_cast<std::int32_t>(slot_offsets_[s]);
    for (int a = 0; a <= items_[s].left && a < n; ++a) {
      for (int b = 1; b <= items_[s].right && a + b <= n; ++b, ++e) {
        const std::int32_t q = sequence_index(a, b);
        entry_slot_[e] = s;
        entry_sequence_[e] = q;
        prev_[e] = tails[q];
        if (tails[q] >= 0) {
          next_[tails[q]] = e;
        } else {
          heads_[q] = e;
        }
        tails[q] = e;
      }
    }
  }
  stats_.build_entries = total;
}

std::optional<LocalSlot> PairwiseListsBackend::best_in(int l_min, int r_min) {
  const int n = max_interleave_;
  const int a = std::max(l_min, 0);
  const int b = std::max(r_min, 1);
  if (a > n || b > n) {
    note_query(stats_, 0);
    return std::nullopt;
  }
  if (a + b <= n) {
    const std::int32_t h = heads_[sequence_index(a, b)];
    note_query(stats_, 1);
    if (h < 0) return std::nullopt;
    return entry_slot_[h];
  }
  // Outside the reachable triangle: walk the dominating sequence (n - b, b).
  std::uint64_t visits = 1;
  for (std::int32_t e = heads_[sequence_index(n - b, b)]; e >= 0;
       e = next_[e], ++visits) {
    if (items_[entry_slot_[e]].left >= a) {
      note_query(stats_, visits);
      return entry_slot_[e];
    }
  }
  note_query(stats_, visits);
  return std::nullopt;
}

bool PairwiseListsBackend::has_left(int l_min) {
  return best_in(l_min, 1).has_value();
}

void PairwiseListsBackend::erase(LocalSlot slot) {
  if (!mark_dead(slot)) return;
  const auto lo = static_cast<std::int32_t>(slot_offsets_[slot]);
  const auto hi = static_cast<std::int32_t>(slot_offsets_[slot + 1]);
  for (std::int32_t e = lo; e < hi; ++e) {
    unlink(heads_, next_, prev_, entry_sequence_[e], e);
  }
  note_deletion(stats_, static_cast<std::uint64_t>(hi - lo));
}

std::string PairwiseListsBackend::dump() const {
  std::ostringstream os;
  const int n = max_interleave_;
  os << "pairwise live=" << live_count_ << " sequences=" << heads_.size()
     << "\n";
  for (int a = 0; a < n; ++a) {
    for (int b = 1; a + b <= n; ++b) {
      os << "  (" << a << "," << b << "):";
      for (std::int32_t e = heads_[sequence_index(a, b)]; e >= 0; e = next_[e]) {
        os << ' ' << items_[entry_slot_[e]].task;
      }
      os << "\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- range tree

namespace {

std::int32_t build_balanced(std::vector<RangeTreeShape::Node>& nodes, int lo,
                            int hi, int depth, int& max_depth) {
  const auto id = static_cast<std::int32_t>(nodes.size());
  nodes.push_back({lo, hi, -1, -1});
  max_depth = std::max(max_depth, depth);
  if (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    const std::int32_t l = build_balanced(nodes, lo, mid, depth + 1, max_depth);
    const std::int32_t r =
        build_balanced(nodes, mid + 1, hi, depth + 1, max_depth);
    nodes[id].left = l;
    nodes[id].right = r;
  }
  return id;
}

void cover_suffix(const std::vector<RangeTreeShape::Node>& nodes,
                  std::int32_t v, int key, std::vector<std::int32_t>& out) {
  while (v >= 0) {
    const auto& node = nodes[v];
    if (key <= node.lo) {
      out.push_back(v);
      return;
    }
    if (key > node.hi) return;
    const auto& left = nodes[node.left];
    if (key <= left.hi) {
      out.push_back(node.right);
      v = node.left;
    } else {
      v = node.right;
    }
  }
}

void path_to(const std::vector<RangeTreeShape::Node>& nodes, std::int32_t v,
             int key, std::vector<std::int32_t>& out) {
  while (v >= 0) {
    out.push_back(v);
    const auto& node = nodes[v];
    if (node.left < 0) return;
    v = key <= nodes[node.left].hi ? node.left : node.right;
  }
}

std::shared_ptr<const RangeTreeShape> shared_shape(int max_interleave) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const RangeTreeShape>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[max_interleave];
  if (!slot) slot = std::make_shared<const RangeTreeShape>(max_interleave);
  return slot;
}

}  // namespace

RangeTreeShape::RangeTreeShape(int n) : max_interleave(n) {
  level1.push_back({0, 0, -1, -1});
  int d1 = 0;
  build_balanced(level1, 1, n, 1, d1);
  level1_depth = d1;
  int d2 = 0;
  build_balanced(level2, 1, n, 0, d2);
  level2_depth = d2;
}

void RangeTreeShape::cover_level1(int a, std::vector<std::int32_t>& out) const {
  if (a <= 0) {
    out.push_back(0);
    out.push_back(1);
    return;
  }
  cover_suffix(level1, 1, a, out);
}

void RangeTreeShape::cover_level2(int b, std::vector<std::int32_t>& out) const {
  cover_suffix(level2, 0, std::max(b, 1), out);
}

void RangeTreeShape::path_level1(int key, std::vector<std::int32_t>& out) const {
  if (key <= 0) {
    out.push_back(0);
    return;
  }
  path_to(level1, 1, key, out);
}

void RangeTreeShape::path_level2(int key, std::vector<std::int32_t>& out) const {
  path_to(level2, 0, key, out);
}

RangeTreeBackend::RangeTreeBackend(std::span<const BackendItem> items,
                                   int max_interleave)
    : SelectionBackend(items, max_interleave),
      shape_(shared_shape(max_interleave)) {
  // Entries are generated slot by slot in priority order, then grouped by
  // list id with a stable sort so every list stays priority sorted.
  struct Raw {
    std::uint32_t list;
    LocalSlot slot;
  };
  std::vector<Raw> raw;
  raw.reserve(items_.size() * 4);
  std::vector<std::int32_t> p1, p2;
  for (LocalSlot s : rank_order()) {
    p1.clear();
    p2.clear();
    shape_->path_level1(items_[s].left, p1);
    shape_->path_level2(items_[s].right, p2);
    for (std::int32_t a : p1) {
      for (std::int32_t b : p2) raw.push_back({list_id(a, b), s});
    }
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Raw& x, const Raw& y) { return x.list < y.list; });

  const std::size_t total = raw.size();
  entry_slot_.resize(total);
  entry_list_.resize(total);
  next_.assign(total, -1);
  prev_.assign(total, -1);
  std::vector<std::uint32_t> per_slot(items_.size() + 1, 0);
  for (std::size_t e = 0; e < total; ++e) {
    entry_slot_[e] = raw[e].slot;
    ++per_slot[raw[e].slot + 1];
    if (list_ids_.empty() || list_ids_.back() != raw[e].list) {
      list_ids_.push_back(raw[e].list);
      heads_.push_back(static_cast<std::int32_t>(e));
    } else {
      next_[e - 1] = static_cast<std::int32_t>(e);
      prev_[e] = static_cast<std::int32_t>(e - 1);
    }
    entry_list_[e] = static_cast<std::int32_t>(list_ids_.size() - 1);
  }
  std::partial_sum(per_slot.begin(), per_slot.end(), per_slot.begin());
  slot_offsets_ = per_slot;
  slot_entries_.resize(total);
  for (std::size_t e = 0; e < total; ++e) {
    slot_entries_[per_slot[entry_slot_[e]]++] = static_cast<std::int32_t>(e);
  }
  stats_.build_entries = total;
}

std::int32_t RangeTreeBackend::find_list(std::uint32_t id) const {
  auto it = std::lower_bound(list_ids_.begin(), list_ids_.end(), id);
  if (it == list_ids_.end() || *it != id) return -1;
  return static_cast<std::int32_t>(it - list_ids_.begin());
}

std::optional<LocalSlot> RangeTreeBackend::best_in(int l_min, int r_min) {
  const int n = max_interleave_;
  if (l_min > n || r_min > n) {
    note_query(stats_, 0);
    return std::nullopt;
  }
  scratch1_.clear();
  scratch2_.clear();
  shape_->cover_level1(l_min, scratch1_);
  shape_->cover_level2(r_min, scratch2_);
  std::optional<LocalSlot> best;
  std::uint64_t visits = 0;
  for (std::int32_t a : scratch1_) {
    for (std::int32_t b : scratch2_) {
      ++visits;
      const std::int32_t list = find_list(list_id(a, b));
      if (list < 0 || heads_[list] < 0) continue;
      const LocalSlot s = entry_slot_[heads_[list]];
      if (!best || rank_[s] < rank_[*best]) best = s;
    }
  }
  note_query(stats_, visits);
  return best;
}

bool RangeTreeBackend::has_left(int l_min) {
  return best_in(l_min, 1).has_value();
}

void RangeTreeBackend::erase(LocalSlot slot) {
  if (!mark_dead(slot)) return;
  const std::uint32_t lo = slot_offsets_[slot];
  const std::uint32_t hi = slot_offsets_[slot + 1];
  for (std::uint32_t k = lo; k < hi; ++k) {
    const std::int32_t e = slot_entries_[k];
    unlink(heads_, next_, prev_, entry_list_[e], e);
  }
  note_deletion(stats_, hi - lo);
}

std::size_t RangeTreeBackend::max_sequences_per_task() const {
  std::size_t best = 0;
  for (std::size_t s = 0; s + 1 < slot_offsets_.size(); ++s) {
    best = std::max<std::size_t>(best, slot_offsets_[s + 1] - slot_offsets_[s]);
  }
  return best;
}

std::string RangeTreeBackend::dump() const {
  std::ostringstream os;
  const auto m2 = static_cast<std::uint32_t>(shape_->level2.size());
  os << "rangetree live=" << live_count_ << " lists=" << list_ids_.size()
     << "\n";
  for (std::size_t l = 0; l < list_ids_.size(); ++l) {
    const auto& n1 = shape_->level1[list_ids_[l] / m2];
    const auto& n2 = shape_->level2[list_ids_[l] % m2];
    os << "  al[" << n1.lo << "," << n1.hi << "] ar[" << n2.lo << "," << n2.hi
       << "]:";
    for (std::int32_t e = heads_[l]; e >= 0; e = next_[e]) {
      os << ' ' << items_[entry_slot_[e]].task;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace pulseil
