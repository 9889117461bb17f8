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

#include "pulseil/bucket_list.hpp"

#include <algorithm>

#include "pulseil/common.hpp"

namespace pulseil {

BucketList::BucketList(std::size_t key_count)
    : key_bucket_(key_count, -1),
      key_pos_(key_count, 0),
      positive_pos_(key_count, -1) {
  if (key_count == 0) return;
  const std::int32_t zero = new_bucket(0, -1, -1);
  min_ = max_ = zero;
  for (Key k = 0; k < key_count; ++k) attach_key(k, zero);
}

BucketList BucketList::build(std::size_t key_count,
                             std::span<const Key> memberships) {
  BucketList list(key_count);
  for (Key k : memberships) list.increment(k);
  return list;
}

std::int32_t BucketList::new_bucket(std::int64_t value, std::int32_t prev,
                                    std::int32_t next) {
  std::int32_t b;
  if (!free_.empty()) {
    b = free_.back();
    free_.pop_back();
  } else {
    b = static_cast<std::int32_t>(buckets_.size());
    buckets_.emplace_back();
  }
  Bucket& nb = buckets_[b];
  nb.value = value;
  nb.prev = prev;
  nb.next = next;
  nb.members.clear();
  if (prev >= 0) buckets_[prev].next = b; else min_ = b;
  if (next >= 0) buckets_[next].prev = b; else max_ = b;
  ++live_buckets_;
  ++operations_;
  return b;
}

void BucketList::release_bucket(std::int32_t b) {
  Bucket& old = buckets_[b];
  if (old.prev >= 0) buckets_[old.prev].next = old.next; else min_ = old.next;
  if (old.next >= 0) buckets_[old.next].prev = old.prev; else max_ = old.prev;
  old.prev = old.next = -1;
  free_.push_back(b);
  --live_buckets_;
  ++operations_;
}

void BucketList::detach_key(Key key) {
  Bucket& b = buckets_[key_bucket_[key]];
  const std::uint32_t pos = key_pos_[key];
  const Key last = b.members.back();
  b.members[pos] = last;
  key_pos_[last] = pos;
  b.members.pop_back();
  ++operations_;
}

void BucketList::attach_key(Key key, std::int32_t b) {
  key_bucket_[key] = b;
  key_pos_[key] = static_cast<std::uint32_t>(buckets_[b].members.size());
  buckets_[b].members.push_back(key);
  ++operations_;
}

void BucketList::set_positive(Key key, bool positive) {
  const bool is = positive_pos_[key] >= 0;
  if (is == positive) return;
  if (positive) {
    positive_pos_[key] = static_cast<std::int64_t>(positive_.size());
    positive_.push_back(key);
  } else {
    const auto pos = static_cast<std::size_t>(positive_pos_[key]);
    const Key last = positive_.back();
    positive_[pos] = last;
    positive_pos_[last] = static_cast<std::int64_t>(pos);
    positive_.pop_back();
    positive_pos_[key] = -1;
  }
}

void BucketList::increment(Key key) {
  const std::int32_t from = key_bucket_[key];
  const std::int64_t target = buckets_[from].value + 1;
  std::int32_t to = buckets_[from].next;
  if (to < 0 || buckets_[to].value != target) to = new_bucket(target, from, to);
  detach_key(key);
  attach_key(key, to);
  if (buckets_[from].members.empty()) release_bucket(from);
  set_positive(key, target > 0);
}

void BucketList::decrement(Key key) {
  const std::int32_t from = key_bucket_[key];
  const std::int64_t target = buckets_[from].value - 1;
  std::int32_t to = buckets_[from].prev;
  if (to < 0 || buckets_[to].value != target) to = new_bucket(target, to, from);
  detach_key(key);
  attach_key(key, to);
  if (buckets_[from].members.empty()) release_bucket(from);
  set_positive(key, target > 0);
}

BucketList::Key BucketList::pick(const Bucket& b, Tie tie,
                                 std::mt19937_64* rng) const {
  PULSEIL_CHECK(!b.members.empty(), "bucket without members");
  if (tie == Tie::kRandom) {
    PULSEIL_CHECK(rng != nullptr, "random tie-break without generator");
    return b.members[uniform_below(*rng, b.members.size())];
  }
  return *std::min_element(b.members.begin(), b.members.end());
}

std::optional<BucketList::Key> BucketList::select_max(Tie tie,
                                                      std::mt19937_64* rng) {
  if (max_ < 0 || buckets_[max_].value <= 0) return std::nullopt;
  return pick(buckets_[max_], tie, rng);
}

std::optional<BucketList::Key> BucketList::select_min_positive(
    Tie tie, std::mt19937_64* rng) {
  std::int32_t b = min_;
  if (b >= 0 && buckets_[b].value <= 0) b = buckets_[b].next;
  if (b < 0) return std::nullopt;
  return pick(buckets_[b], tie, rng);
}

std::optional<BucketList::Key> BucketList::select_random_positive(
    std::mt19937_64& rng) {
  if (positive_.empty()) return std::nullopt;
  return positive_[uniform_below(rng, positive_.size())];
}

std::vector<std::pair<std::int64_t, std::vector<BucketList::Key>>>
BucketList::snapshot() const {
  std::vector<std::pair<std::int64_t, std::vector<Key>>> out;
  for (std::int32_t b = min_; b >= 0; b = buckets_[b].next) {
    std::vector<Key> keys = buckets_[b].members;
    std::sort(keys.begin(), keys.end());
    out.emplace_back(buckets_[b].value, std::move(keys));
  }
  return out;
}

}  // namespace pulseil
