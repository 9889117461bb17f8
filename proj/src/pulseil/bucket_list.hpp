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

#ifndef PULSEIL_BUCKET_LIST_HPP_
#define PULSEIL_BUCKET_LIST_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace pulseil {

// Keys (PRFs or disks) grouped into buckets of equal integer cardinality.
// Buckets form a doubly linked list sorted by value, so the extreme buckets
// are reachable in O(1) and a +-1 adjustment only splices neighbours.
//
// Invariants: bucket values strictly increase along the links; a bucket
// exists iff some key currently holds its value.
class BucketList {
 public:
  using Key = std::uint32_t;

  enum class Tie { kLowestKey, kRandom };

  BucketList() = default;
  // All keys start in bucket 0.
  explicit BucketList(std::size_t key_count);

  // One increment per entry of `memberships` (each entry names a key).
  static BucketList build(std::size_t key_count,
                          std::span<const Key> memberships);

  void increment(Key key);
  void decrement(Key key);

  std::int64_t value(Key key) const { return buckets_[key_bucket_[key]].value; }
  std::size_t key_count() const { return key_bucket_.size(); }
  std::size_t bucket_count() const { return live_buckets_; }

  // Key in the largest bucket, provided that bucket's value is positive.
  std::optional<Key> select_max(Tie tie, std::mt19937_64* rng = nullptr);
  // Key in the smallest bucket with a positive value.
  std::optional<Key> select_min_positive(Tie tie,
                                         std::mt19937_64* rng = nullptr);
  // Uniform over keys with a positive value.
  std::optional<Key> select_random_positive(std::mt19937_64& rng);

  // (value, sorted keys) for every bucket in ascending order.
  std::vector<std::pair<std::int64_t, std::vector<Key>>> snapshot() const;

  // Elementary splice/move steps performed so far.
  std::uint64_t operations() const { return operations_; }

 private:
  struct Bucket {
    std::int64_t value = 0;
    std::int32_t prev = -1;
    std::int32_t next = -1;
    std::vector<Key> members;
  };

  std::int32_t new_bucket(std::int64_t value, std::int32_t prev,
                          std::int32_t next);
  void release_bucket(std::int32_t b);
  void detach_key(Key key);
  void attach_key(Key key, std::int32_t b);
  Key pick(const Bucket& b, Tie tie, std::mt19937_64* rng) const;
  void set_positive(Key key, bool positive);

  std::vector<Bucket> buckets_;
  std::vector<std::int32_t> free_;
  std::int32_t min_ = -1;
  std::int32_t max_ = -1;
  std::size_t live_buckets_ = 0;
  std::vector<std::int32_t> key_bucket_;
  std::vector<std::uint32_t> key_pos_;
  std::vector<Key> positive_;
  std::vector<std::int64_t> positive_pos_;
  std::uint64_t operations_ = 0;
};

}  // namespace pulseil

#endif  // PULSEIL_BUCKET_LIST_HPP_
