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

// Backward pulse scheduling inside one look. The cursor walks from the
// rightmost slot to the leftmost; at each slot a task is taken from the
// live selection structure, or the partial schedule is shifted left and the
// freed right-hand slots are filled by a recursive call.
//
// The partial schedule is one episode-wide state: a frozen prefix (runs
// already pushed to a leftmost boundary) and one contiguous run that moves.
// Shifts move only the run, in O(1), by adjusting its first slot.

#ifndef PULSEIL_BACKWARD_INTERLEAVING_HPP_
#define PULSEIL_BACKWARD_INTERLEAVING_HPP_

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "pulseil/selection.hpp"

namespace pulseil {

struct InterleaveStats {
  std::uint64_t top_calls = 0;
  std::uint64_t iterations = 0;      // loop bodies over all calls
  std::uint64_t max_iterations = 0;  // worst single top-level call
  std::uint64_t bound_violations = 0;
  std::uint64_t recursions = 0;

  void merge(const InterleaveStats& other);
};

struct SlotAssignment {
  LocalSlot slot;  // local slot in the selection structure
  int position;    // 1-based T-pulse slot in the PRI
};

class BackwardInterleaver {
 public:
  // When `enforce_bound` is set, a top-level call whose loop body runs more
  // than 2 * N_intlv times throws InternalError.
  explicit BackwardInterleaver(int max_interleave, bool enforce_bound = true);

  // One top-level call over slots [1, N_intlv] with an empty schedule.
  // Selected tasks are erased from `live`. Result is sorted by position.
  std::vector<SlotAssignment> schedule_look(SelectionBackend& live);

  // Same, over [first, last]; used by tests of the recursion edge cases.
  std::vector<SlotAssignment> schedule_range(SelectionBackend& live, int first,
                                             int last);

  const InterleaveStats& stats() const { return stats_; }
  std::uint64_t last_iterations() const { return iterations_; }

 private:
  static constexpr int kNoReach = std::numeric_limits<int>::max() / 2;

  void call(int first, int last);
  int schedule_slack(int tail) const;
  void assign(LocalSlot slot, int position);
  bool run_ends_at(int position) const;
  void freeze_run_at(int first);

  int max_interleave_;
  bool enforce_bound_;
  SelectionBackend* live_ = nullptr;
  std::vector<SlotAssignment> fixed_;
  int fixed_min_reach_ = kNoReach;
  std::deque<LocalSlot> run_;
  int run_first_ = 0;
  int run_min_rel_ = kNoReach;  // min over run of (index + A_l)
  std::uint64_t iterations_ = 0;
  InterleaveStats stats_;
};

}  // namespace pulseil

#endif  // PULSEIL_BACKWARD_INTERLEAVING_HPP_
