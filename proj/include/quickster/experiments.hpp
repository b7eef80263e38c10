/*
 Copyright 2026 The Quickster Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

// Canned studies over the scenario simulator: single runs with metrics,
// speed sweeps, rolling-contact A/B comparisons, and push-recovery grids.
// The command-line tool and the test suite both drive these.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "quickster/alip.hpp"
#include "quickster/metrics.hpp"
#include "quickster/simulator.hpp"
#include "quickster/step_planner.hpp"
#include "quickster/stride_record.hpp"

namespace quickster {

struct ExperimentResult {
  RunResult run;
  std::size_t n_completed = 0;                 // strides that reached touchdown
  std::vector<StrideMetrics> stride_metrics;   // one row per completed stride
  std::optional<AggregateMetrics> steady;      // completed strides past the warmup
};

// Runs the scenario and computes per-stride metrics. A stride truncated by a
// fall is excluded from the metric rows. The steady aggregate skips the first
// `warmup` completed strides (all of them if fewer are available).
inline ExperimentResult run_experiment(const SimConfig& c, int warmup = 2) {
  ExperimentResult out;
  out.run = run_scenario(c);

  std::size_t n = out.run.strides.size();
  if (out.run.fall && n > 0) --n;
  out.n_completed = n;

  std::vector<StrideRecord> completed(out.run.strides.begin(), out.run.strides.begin() + n);
  out.stride_metrics.reserve(n);
  for (const auto& r : completed)
    out.stride_metrics.push_back(compute_stride_metrics(r, c.gait, c.include_lateral_work));

  std::size_t skip = static_cast<std::size_t>(std::max(warmup, 0));
  if (skip >= n) skip = 0;
  if (n > 0) {
    std::vector<StrideRecord> tail(completed.begin() + skip, completed.end());
    out.steady = aggregate(tail, c.gait, c.include_lateral_work);
  }
  return out;
}

// Distance of a step-start state from the closed-form periodic orbit for the
// given stance side, normalized by the leg length. Momentum errors are scaled
// to position units by m*dz*omega so both axes weigh comparably.
inline double periodicity_error(const AlipState& start, const GaitParams& p, Side stance_side,
                                double l_max) {
  double xs = 0.0, Ls = 0.0, ys = 0.0, etas = 0.0;
  forward_fixed_point(p, &xs, &Ls);
  lateral_fixed_point(p, stance_side, &ys, &etas);
  const double scale = p.m * p.dz * natural_frequency(p);
  const double ef = std::abs(start.x - xs) + std::abs(start.L_y - Ls) / scale;
  const double el = std::abs(start.y - ys) + std::abs(start.L_x - etas) / scale;
  return std::max(ef, el) / l_max;
}

inline double periodicity_error(const StrideRecord& rec, const GaitParams& p, double l_max) {
  const Sample& s0 = rec.samples.front();
  AlipState a{s0.offset_x, s0.offset_y, s0.L_x, s0.L_y};
  return periodicity_error(a, p, rec.side, l_max);
}

struct SpeedSweepRow {
  double commanded = 0.0;       // [m/s]
  bool fell = false;
  double realized = 0.0;        // median-stride forward speed [m/s]
  double step_width = 0.0;      // median-stride width [m]
  double positive_work = 0.0;   // [J]
  double negative_work = 0.0;   // [J]
  double max_abs_height_accel = 0.0;  // [m/s^2]
};

// One steady run per commanded speed. Any velocity profile in the base
// scenario is dropped so the commanded speed applies for the whole run.
inline std::vector<SpeedSweepRow> sweep_speeds(const SimConfig& base,
                                               const std::vector<double>& speeds,
                                               int warmup = 2) {
  std::vector<SpeedSweepRow> rows;
  rows.reserve(speeds.size());
  for (double v : speeds) {
    SimConfig c = base;
    c.gait.v_d = Vec2{v, 0.0};
    c.scenario.velocity_profile.clear();
    SpeedSweepRow row;
    row.commanded = v;
    ExperimentResult r = run_experiment(c, warmup);
    row.fell = r.run.fall.has_value();
    if (r.steady) {
      const StrideMetrics& med = r.steady->median;
      row.realized = med.avg_forward_velocity;
      row.step_width = med.step_width;
      row.positive_work = med.positive_work;
      row.negative_work = med.negative_work;
      row.max_abs_height_accel = med.max_abs_height_accel;
    }
    rows.push_back(row);
  }
  return rows;
}

struct AbRollingReport {
  AggregateMetrics off;
  AggregateMetrics on;
  bool off_fell = false;
  bool on_fell = false;
  double positive_reduction_pct = 0.0;  // of median-stride positive work
  double negative_reduction_pct = 0.0;  // of median-stride |negative work|
};

// Same configuration run twice, point foot vs rolling contact. The rolling
// run starts from the point-foot periodic orbit, so the warmup skip also
// covers its transient.
inline AbRollingReport ab_rolling(const SimConfig& base, int warmup = 5) {
  SimConfig off_cfg = base;
  off_cfg.rolling.enabled = false;
  SimConfig on_cfg = base;
  on_cfg.rolling.enabled = true;

  ExperimentResult off = run_experiment(off_cfg, warmup);
  ExperimentResult on = run_experiment(on_cfg, warmup);

  AbRollingReport rep;
  rep.off_fell = off.run.fall.has_value();
  rep.on_fell = on.run.fall.has_value();
  if (off.steady) rep.off = *off.steady;
  if (on.steady) rep.on = *on.steady;
  if (off.steady && on.steady && rep.off.median.positive_work > 0.0) {
    rep.positive_reduction_pct =
        100.0 * (1.0 - rep.on.median.positive_work / rep.off.median.positive_work);
    if (rep.off.median.negative_work < 0.0)
      rep.negative_reduction_pct =
          100.0 * (1.0 - rep.on.median.negative_work / rep.off.median.negative_work);
  }
  return rep;
}

struct PushBound {
  double direction = 0.0;  // world-frame heading of the velocity change [rad]
  double bound_dv = 0.0;   // largest surviving CoM velocity change [m/s]
  bool capped = false;     // search hit the upper bracket
};

namespace detail {

inline bool survives_push(const SimConfig& base, double direction, double t_push, double dv) {
  SimConfig c = base;
  c.scenario.pushes.clear();
  c.scenario.drops.clear();
  c.scenario.pushes.push_back(PushSpec{t_push, push_from_direction(c.gait, direction, dv)});
  RunResult r = run_scenario(c);
  return !r.fall.has_value();
}

}  // namespace detail

// Bisects the largest instantaneous CoM velocity change the walker survives
// when pushed at t_push along the given world direction.
inline PushBound bisect_push_bound(const SimConfig& base, double direction, double t_push,
                                   double dv_cap = 2.0, int iters = 16) {
  PushBound out;
  out.direction = direction;
  if (detail::survives_push(base, direction, t_push, dv_cap)) {
    out.bound_dv = dv_cap;
    out.capped = true;
    return out;
  }
  double lo = 0.0, hi = dv_cap;
  for (int i = 0; i < iters; ++i) {
    double mid = 0.5 * (lo + hi);
    if (detail::survives_push(base, direction, t_push, mid))
      lo = mid;
    else
      hi = mid;
  }
  out.bound_dv = lo;
  return out;
}

inline std::vector<PushBound> push_grid(const SimConfig& base, int n_directions, double t_push,
                                        double dv_cap = 2.0, int iters = 16) {
  std::vector<PushBound> bounds;
  bounds.reserve(static_cast<std::size_t>(n_directions));
  for (int k = 0; k < n_directions; ++k) {
    double dir = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_directions);
    bounds.push_back(bisect_push_bound(base, dir, t_push, dv_cap, iters));
  }
  return bounds;
}

}  // namespace quickster
