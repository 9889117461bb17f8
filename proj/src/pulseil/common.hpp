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

#ifndef PULSEIL_COMMON_HPP_
#define PULSEIL_COMMON_HPP_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace pulseil {

// Dense task index into a scenario's task vector. Tasks are kept sorted by
// their external id, so index order and id order coincide.
using TaskIndex = std::uint32_t;
using PrfIndex = std::uint32_t;
using DiskId = std::uint32_t;

inline constexpr TaskIndex kNoTask = std::numeric_limits<TaskIndex>::max();

// Input that violates a documented precondition or schema.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search budget (node count, desk-scale limits) was exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed. Never expected; signals a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define PULSEIL_CHECK(cond, msg)                                          \
  do {                                                                    \
    if (!(cond)) {                                                        \
      throw ::pulseil::InternalError(std::string(__FILE__) + ":" +        \
                                     std::to_string(__LINE__) + ": " +    \
                                     (msg));                              \
    }                                                                     \
  } while (0)

// splitmix64 finalizer; used to derive per-task random priorities and
// independent generator streams from one user seed.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform integer in [0, n) by rejection. Portable across standard libraries,
// unlike std::uniform_int_distribution, so seeded runs reproduce everywhere.
template <typename Engine>
std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) from the top 53 bits.
template <typename Engine>
double uniform_unit(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace pulseil

#endif  // PULSEIL_COMMON_HPP_
