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

#include "pulseil/backward_interleaving.hpp"

#include <algorithm>

namespace pulseil {

void InterleaveStats::merge(const InterleaveStats& other) {
  top_calls += other.top_calls;
  iterations += other.iterations;
  max_iterations = std::max(max_iterations, other.max_iterations);
  bound_violations += other.bound_violations;
  recursions += other.recursions;
}

BackwardInterleaver::BackwardInterleaver(int max_interleave, bool enforce_bound)
    : max_interleave_(max_interleave), enforce_bound_(enforce_bound) {
  if (max_interleave < 1) throw InvalidInput("interleaver: N_intlv must be >= 1");
}

std::vector<SlotAssignment> BackwardInterleaver::schedule_look(
    SelectionBackend& live) {
  return schedule_range(live, 1, max_interleave_);
}

std::vector<SlotAssignment> BackwardInterleaver::schedule_range(
    SelectionBackend& live, int first, int last) {
  if (first < 1 || last > max_interleave_) {
    throw InvalidInput("interleaver: slot range outside [1, N_intlv]");
  }
  live_ = &live;
  fixed_.clear();
  fixed_min_reach_ = kNoReach;
  run_.clear();
  run_first_ = 0;
  run_min_rel_ = kNoReach;
  iterations_ = 0;

  call(first, last);

  ++stats_.top_calls;
  stats_.iterations += iterations_;
  stats_.max_iterations = std::max(stats_.max_iterations, iterations_);

  std::vector<SlotAssignment> out = fixed_;
  for (std::size_t idx = 0; idx < run_.size(); ++idx) {
    out.push_back({run_[idx], run_first_ + static_cast<int>(idx)});
  }
  std::sort(out.begin(), out.end(),
            [](const SlotAssignment& a, const SlotAssignment& b) {
              return a.position < b.position;
            });
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    PULSEIL_CHECK(out[idx].position == first + static_cast<int>(idx),
                  "look occupancy is not contiguous from the first slot");
  }
  live_ = nullptr;
  return out;
}

int BackwardInterleaver::schedule_slack(int tail) const {
  int reach = fixed_min_reach_;
  if (!run_.empty()) reach = std::min(reach, run_first_ + run_min_rel_);
  if (reach == kNoReach) return max_interleave_;
  return reach - tail;
}

bool BackwardInterleaver::run_ends_at(int position) const {
  return !run_.empty() &&
         run_first_ + static_cast<int>(run_.size()) - 1 == position;
}

void BackwardInterleaver::assign(LocalSlot slot, int position) {
  const int left = live_->item(slot).left;
  if (run_.empty()) {
    run_.push_back(slot);
    run_first_ = position;
    run_min_rel_ = left;
  } else if (position == run_first_ - 1) {
    run_.push_front(slot);
    run_first_ = position;
    run_min_rel_ = std::min(run_min_rel_ + 1, left);
  } else {
    const int len = static_cast<int>(run_.size());
    PULSEIL_CHECK(position == run_first_ + len,
                  "assignment not adjacent to the moving run");
    run_.push_back(slot);
    run_min_rel_ = std::min(run_min_rel_, len + left);
  }
  live_->erase(slot);
}

void BackwardInterleaver::freeze_run_at(int first) {
  if (run_.empty()) return;
  for (std::size_t idx = 0; idx < run_.size(); ++idx) {
    fixed_.push_back({run_[idx], first + static_cast<int>(idx)});
  }
  fixed_min_reach_ = std::min(fixed_min_reach_, first + run_min_rel_);
  run_.clear();
  run_min_rel_ = kNoReach;
}

void BackwardInterleaver::call(int first, int last) {
  int tail = last;
  for (int cursor = last; cursor >= first; --cursor) {
    ++iterations_;
    if (iterations_ > 2 * static_cast<std::uint64_t>(max_interleave_)) {
      if (iterations_ == 2 * static_cast<std::uint64_t>(max_interleave_) + 1) {
        ++stats_.bound_violations;
      }
      if (enforce_bound_) {
        throw InternalError("interleaver: loop bound 2*N_intlv exceeded");
      }
    }
    const int behind = tail - cursor;
    PULSEIL_CHECK(behind >= 0, "cursor passed the tail");
    const int slack = schedule_slack(tail);

    if (live_->has_left(behind)) {
      if (auto pick = live_->best_in(behind, cursor)) {
        assign(*pick, cursor);
      } else if (cursor == last) {
        --tail;
      } else {
        // One-slot shift: the run now covers the cursor and frees the old
        // tail, which gets a single-slot retry.
        if (!run_.empty()) {
          PULSEIL_CHECK(run_first_ == cursor + 1 && run_ends_at(tail),
                        "run does not span (cursor, tail]");
          --run_first_;
        }
        const int freed = tail;
        ++stats_.recursions;
        call(freed, freed + std::min(0, slack - 1));
        tail = run_ends_at(freed) ? freed : freed - 1;
      }
    } else if (cursor != last) {
      if (!run_.empty()) {
        PULSEIL_CHECK(run_first_ == cursor + 1 && run_ends_at(tail),
                      "run does not span (cursor, tail]");
      }
      const int reopened = first + behind;
      freeze_run_at(first);
      ++stats_.recursions;
      call(reopened, std::min(tail, slack + reopened - 1));
      return;
    }
  }
}

}  // namespace pulseil
