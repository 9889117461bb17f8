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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace pulseil_test {

Timeline make_timeline(const TrackTask& task, const PrfConfig& prf,
                       const RadarConfig& cfg) {
  const long double c = cfg.wave_speed;
  Timeline t;
  t.pri = 1.0L / prf.frequency;
  t.pulse = cfg.pulse_width;
  // Round-trip delay folded into one PRI.
  long double delay = std::fmod(2.0L * task.range / c, t.pri);
  if (delay < 0) delay += t.pri;
  const long double spread = 2.0L * cfg.n_range * task.sigma_range / c;
  t.echo_lo = delay - spread;
  t.echo_hi = delay + spread + t.pulse;
  t.near_blind = 2.0L * prf.clutter_range_plus / c;
  t.far_blind = 2.0L * prf.clutter_range_minus / c;

  const long double fr = prf.frequency;
  long double fs = -2.0L * task.radial_velocity / cfg.wavelength;
  long double fa = std::fmod(fs, fr);
  if (fa < 0) fa += fr;
  const long double df = static_cast<long double>(cfg.n_freq) * task.sigma_freq;
  t.freq_lo = fa - df;
  t.freq_hi = fa + df;
  t.freq_clear_lo = prf.clutter_freq_plus;
  t.freq_clear_hi = fr - prf.clutter_freq_minus;
  return t;
}

namespace {

bool overlaps(long double a_lo, long double a_hi, long double b_lo,
              long double b_hi) {
  return a_lo < b_hi && b_lo < a_hi;
}

}  // namespace

bool timeline_clear(const Timeline& t, int k, int m) {
  if (k < 1 || m < k) return false;
  const long double shift = (k - 1) * t.pulse;
  const long double lo = shift + t.echo_lo;
  const long double hi = shift + t.echo_hi;
  // R-pulse must miss every T-pulse of this PRI and of the next one.
  for (int s = 1; s <= m; ++s) {
    const long double tx = (s - 1) * t.pulse;
    if (overlaps(lo, hi, tx, tx + t.pulse)) return false;
    if (overlaps(lo, hi, t.pri + tx, t.pri + tx + t.pulse)) return false;
  }
  if (lo < m * t.pulse) return false;
  if (lo < (m - 1) * t.pulse + t.near_blind) return false;
  if (hi > t.pri - t.far_blind) return false;
  return t.freq_lo >= t.freq_clear_lo && t.freq_hi <= t.freq_clear_hi;
}

TimelineVerdict certify_availability(const TrackTask& task,
                                     const PrfConfig& prf,
                                     const RadarConfig& cfg) {
  TimelineVerdict v;
  auto fail = [&](std::string why) {
    v.ok = false;
    v.detail = std::move(why);
    return v;
  };
  const Timeline t = make_timeline(task, prf, cfg);
  const bool lib = is_trackable(task, prf, cfg);
  const bool ref = timeline_trackable(t);
  if (lib != ref) {
    return fail("trackable mismatch: library " + std::to_string(lib) +
                " timeline " + std::to_string(ref));
  }
  const int n = cfg.max_interleave;
  const int al = leftward_availability(task, prf, cfg);
  const int ar = rightward_availability(task, prf, cfg);
  if (!lib) {
    if (al != 0 || ar != 0) return fail("untrackable task has availability");
    return v;
  }
  if (ar < 1) return fail("trackable task with A_r < 1");
  for (int k = 1; k <= ar; ++k) {
    for (int m = k; m <= std::min(k + al, n); ++m) {
      if (!timeline_clear(t, k, m)) {
        return fail("placement k=" + std::to_string(k) +
                    " m=" + std::to_string(m) + " not clear");
      }
    }
  }
  const std::int64_t raw_r = raw_rightward_availability(task, prf, cfg);
  if (raw_r < n && timeline_clear(t, static_cast<int>(raw_r) + 1,
                                  static_cast<int>(raw_r) + 1)) {
    return fail("slot A_r+1 is also clear");
  }
  const std::int64_t raw_l = raw_leftward_availability(task, prf, cfg);
  if (raw_l + 2 <= n && timeline_clear(t, 1, static_cast<int>(raw_l) + 2)) {
    return fail("look size A_l+2 at slot 1 is also clear");
  }
  return v;
}

std::map<DiskKey, std::vector<TaskIndex>> brute_force_disks(
    const AvailabilityTable& table, const std::vector<TrackTask>& tasks,
    const GridSpec& grid) {
  std::map<DiskKey, std::vector<TaskIndex>> out;
  if (tasks.empty()) return out;
  double umin = tasks[0].point.u, umax = umin;
  double vmin = tasks[0].point.v, vmax = vmin;
  for (const TrackTask& t : tasks) {
    umin = std::min(umin, t.point.u);
    umax = std::max(umax, t.point.u);
    vmin = std::min(vmin, t.point.v);
    vmax = std::max(vmax, t.point.v);
  }
  const double eps = grid.spacing;
  const double r = grid.disk_radius;
  const auto iu0 = static_cast<std::int64_t>(std::floor((umin - r) / eps)) - 2;
  const auto iu1 = static_cast<std::int64_t>(std::ceil((umax + r) / eps)) + 2;
  const auto iv0 = static_cast<std::int64_t>(std::floor((vmin - r) / eps)) - 2;
  const auto iv1 = static_cast<std::int64_t>(std::ceil((vmax + r) / eps)) + 2;
  for (PrfIndex p = 0; p < table.prf_count(); ++p) {
    std::vector<TaskIndex> members;
    for (TaskIndex i = 0; i < tasks.size(); ++i) {
      if (table.at(i, p).trackable) members.push_back(i);
    }
    for (std::int64_t iu = iu0; iu <= iu1; ++iu) {
      for (std::int64_t iv = iv0; iv <= iv1; ++iv) {
        std::vector<TaskIndex> in;
        for (TaskIndex i : members) {
          const double du = static_cast<double>(iu) * eps - tasks[i].point.u;
          const double dv = static_cast<double>(iv) * eps - tasks[i].point.v;
          if (du * du + dv * dv <= r * r) in.push_back(i);
        }
        if (!in.empty()) out.emplace(DiskKey{p, iu, iv}, std::move(in));
      }
    }
  }
  return out;
}

std::optional<std::uint32_t> LinearScan::best_in(int l_min, int r_min) const {
  std::optional<std::uint32_t> best;
  for (std::uint32_t s = 0; s < items_.size(); ++s) {
    const BackendItem& it = items_[s];
    if (!live_[s] || it.left < l_min || it.right < r_min) continue;
    if (!best) {
      best = s;
      continue;
    }
    const BackendItem& b = items_[*best];
    bool better;
    if (it.priority.primary != b.priority.primary) {
      better = it.priority.primary > b.priority.primary;
    } else if (it.priority.secondary != b.priority.secondary) {
      better = it.priority.secondary > b.priority.secondary;
    } else {
      better = it.task < b.task;
    }
    if (better) best = s;
  }
  return best;
}

bool LinearScan::has_left(int l_min) const {
  for (std::uint32_t s = 0; s < items_.size(); ++s) {
    if (live_[s] && items_[s].left >= l_min) return true;
  }
  return false;
}

TraceResult backend_trace(BackendKind kind, std::uint64_t seed,
                          std::uint64_t operations) {
  TraceResult out;
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t n) { return static_cast<int>(rng() % n); };
  auto mismatch = [&](const std::string& what) {
    if (out.mismatches++ == 0) out.first_mismatch = what;
  };
  while (out.operations < operations) {
    const int n = 1 + below(8);
    const int count = below(81);
    std::vector<BackendItem> items;
    TaskIndex task = 0;
    for (int s = 0; s < count; ++s) {
      task += 1 + static_cast<TaskIndex>(below(3));
      BackendItem it;
      it.task = task;
      it.left = below(n + 1);
      it.right = 1 + below(n);
      // Few distinct keys so ties reach every level of the order.
      it.priority.primary = static_cast<double>(below(5)) - 2.0;
      it.priority.secondary = static_cast<std::uint64_t>(below(3));
      items.push_back(it);
    }
    auto backend = make_backend(kind, items, n);
    LinearScan ref(items);
    ++out.operations;
    const int steps = 3 * count + 5;
    for (int step = 0; step < steps && out.operations < operations; ++step) {
      ++out.operations;
      const int op = below(10);
      if (op < 6) {
        const int l = below(n + 2);
        const int r = 1 + below(n + 1);
        const auto got = backend->best_in(l, r);
        const auto want = ref.best_in(l, r);
        if (got != want) {
          mismatch("best_in(" + std::to_string(l) + "," + std::to_string(r) +
                   ") N=" + std::to_string(n));
        }
      } else if (op < 7) {
        const int l = below(n + 2);
        if (backend->has_left(l) != ref.has_left(l)) {
          mismatch("has_left(" + std::to_string(l) + ") N=" + std::to_string(n));
        }
      } else if (count > 0) {
        const auto s = static_cast<std::uint32_t>(below(count));
        backend->erase(s);
        ref.erase(s);
        if (backend->live(s)) mismatch("erase left the slot live");
      }
    }
    std::size_t live = 0;
    for (std::uint32_t s = 0; s < ref.size(); ++s) live += ref.live(s);
    if (backend->live_count() != live) mismatch("live count differs");
    out.stats.merge(backend->stats());
  }
  return out;
}

namespace {

// Cheapest group that can hold the block in some slot order.
std::optional<double> block_cost(const IpInstance& inst,
                                 std::vector<std::uint32_t> block) {
  const int n = inst.max_interleave();
  const int m = static_cast<int>(block.size());
  if (m > n) return std::nullopt;
  std::optional<double> best;
  const auto groups = inst.groups();
  for (std::uint32_t g = 0; g < groups.size(); ++g) {
    if (groups[g].copies == 0) continue;
    std::sort(block.begin(), block.end());
    bool placed = false;
    do {
      bool ok = true;
      for (int k = 1; k <= m && ok; ++k) {
        const IpCell* c = inst.cell(block[k - 1], g);
        ok = c != nullptr && k <= c->right && m <= k + c->left;
      }
      placed = ok;
    } while (!placed && std::next_permutation(block.begin(), block.end()));
    if (placed && (!best || groups[g].dwell < *best)) best = groups[g].dwell;
  }
  return best;
}

}  // namespace

std::optional<double> enumerate_optimum(const IpInstance& inst) {
  const auto rows = static_cast<std::uint32_t>(inst.task_count());
  if (rows == 0) return 0.0;
  std::optional<double> best;
  std::vector<std::vector<std::uint32_t>> blocks;
  std::function<void(std::uint32_t)> place = [&](std::uint32_t row) {
    if (row == rows) {
      double total = 0.0;
      for (const auto& b : blocks) {
        const auto c = block_cost(inst, b);
        if (!c) return;
        total += *c;
      }
      if (!best || total < *best) best = total;
      return;
    }
    // Index loop: deeper calls append to blocks.
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(row);
      place(row + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({row});
    place(row + 1);
    blocks.pop_back();
  };
  place(0);
  return best;
}

TrackTask make_task(std::int64_t id, double range, double doppler,
                    const RadarConfig& cfg, double sigma_range,
                    double sigma_freq, ScanPoint point) {
  TrackTask t;
  t.id = id;
  t.range = range;
  t.radial_velocity = -doppler * cfg.wavelength / 2.0;
  t.sigma_range = sigma_range;
  t.sigma_freq = sigma_freq;
  t.point = point;
  return t;
}

}  // namespace pulseil_test
