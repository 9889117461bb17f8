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

#include "pulseil/schedule.hpp"

#include <algorithm>

namespace pulseil {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view s,
                        const std::pair<E, std::string_view> (&table)[N]) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(E v, const std::pair<E, std::string_view> (&table)[N]) {
  for (const auto& [value, name] : table) {
    if (value == v) return name;
  }
  return "?";
}

constexpr std::pair<Mode, std::string_view> kModes[] = {
    {Mode::kEdbf, "edbf"}, {Mode::kSdbf, "sdbf"}};
constexpr std::pair<PrfRule, std::string_view> kPrfRules[] = {
    {PrfRule::kGreedy, "G"},
    {PrfRule::kReverseGreedy, "RG"},
    {PrfRule::kRandom, "R"}};
constexpr std::pair<TaskRule, std::string_view> kTaskRules[] = {
    {TaskRule::kSar, "SAR"}, {TaskRule::kLar, "LAR"}, {TaskRule::kRandom, "R"},
    {TaskRule::kSap, "SAP"}, {TaskRule::kSla, "SLA"}, {TaskRule::kSra, "SRA"}};
constexpr std::pair<DiskRule, std::string_view> kDiskRules[] = {
    {DiskRule::kGreedy, "GD"},
    {DiskRule::kReverseGreedy, "RGD"},
    {DiskRule::kWeighted, "WGD"}};
constexpr std::pair<SubRule, std::string_view> kSubRules[] = {
    {SubRule::kRandom, "R"}, {SubRule::kSmallestDwell, "SD"}};

}  // namespace

std::string_view to_string(Mode v) { return name_of(v, kModes); }
std::string_view to_string(PrfRule v) { return name_of(v, kPrfRules); }
std::string_view to_string(TaskRule v) { return name_of(v, kTaskRules); }
std::string_view to_string(DiskRule v) { return name_of(v, kDiskRules); }
std::string_view to_string(SubRule v) { return name_of(v, kSubRules); }
std::optional<Mode> parse_mode(std::string_view s) { return lookup(s, kModes); }
std::optional<PrfRule> parse_prf_rule(std::string_view s) {
  return lookup(s, kPrfRules);
}
std::optional<TaskRule> parse_task_rule(std::string_view s) {
  return lookup(s, kTaskRules);
}
std::optional<DiskRule> parse_disk_rule(std::string_view s) {
  return lookup(s, kDiskRules);
}
std::optional<SubRule> parse_sub_rule(std::string_view s) {
  return lookup(s, kSubRules);
}

double look_dwell(const PrfConfig& prf, const RadarConfig& cfg) {
  return static_cast<double>(cfg.pulses_per_look) / prf.frequency;
}

std::vector<double> look_dwells(std::span<const PrfConfig> prfs,
                                const RadarConfig& cfg) {
  std::vector<double> out;
  out.reserve(prfs.size());
  for (const PrfConfig& p : prfs) out.push_back(look_dwell(p, cfg));
  return out;
}

double objective_from_counts(std::span<const std::uint64_t> looks_per_prf,
                             std::span<const double> dwell_per_prf) {
  PULSEIL_CHECK(looks_per_prf.size() == dwell_per_prf.size(),
                "objective: count and dwell vectors differ in length");
  double total = 0.0;
  for (std::size_t p = 0; p < looks_per_prf.size(); ++p) {
    if (looks_per_prf[p] == 0) continue;
    total += static_cast<double>(looks_per_prf[p]) * dwell_per_prf[p];
  }
  return total;
}

std::size_t Schedule::scheduled_task_count() const {
  std::size_t n = 0;
  for (const ScheduledLook& l : looks) n += l.placements.size();
  return n;
}

std::vector<std::uint64_t> Schedule::looks_per_prf(std::size_t prf_count) const {
  std::vector<std::uint64_t> counts(prf_count, 0);
  for (const ScheduledLook& l : looks) {
    if (l.placements.empty()) continue;
    PULSEIL_CHECK(l.prf < prf_count, "look PRF out of range");
    ++counts[l.prf];
  }
  return counts;
}

double Schedule::objective(std::span<const double> dwell_per_prf) const {
  const auto counts = looks_per_prf(dwell_per_prf.size());
  return objective_from_counts(counts, dwell_per_prf);
}

void RunStats::note_selection(std::uint64_t ops) {
  ++selections;
  selection_ops += ops;
  max_selection_ops = std::max(max_selection_ops, ops);
}

void RunStats::note_update(std::uint64_t ops) {
  ++updates;
  update_ops += ops;
  max_update_ops = std::max(max_update_ops, ops);
}

void RunStats::merge_counters(const RunStats& other) {
  interleave.merge(other.interleave);
  backend.merge(other.backend);
  selection_ops += other.selection_ops;
  selections += other.selections;
  max_selection_ops = std::max(max_selection_ops, other.max_selection_ops);
  update_ops += other.update_ops;
  updates += other.updates;
  max_update_ops = std::max(max_update_ops, other.max_update_ops);
}

}  // namespace pulseil
