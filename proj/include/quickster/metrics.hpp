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

// Per-stride energetics on the sampled CoM trajectory.
//
// Work is the time integral of the positive/negative parts of the rate of
// the CoM forward kinetic energy, the forward direction being the stride's
// heading. Rates come from central differences; on the uniform control
// grid the trapezoidal split telescopes so positive + negative work equals
// the net kinetic-energy change exactly. These are CoM-work proxies: on a
// reduced-order plant no joint-level power is defined.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "quickster/alip.hpp"
#include "quickster/stride_record.hpp"
#include "quickster/types.hpp"

namespace quickster {

struct StrideMetrics {
  int step_index = 0;
  double duration = 0.0;              // [s]
  double avg_forward_velocity = 0.0;  // heading-aligned CoM displacement rate [m/s]
  double avg_lateral_velocity = 0.0;  // [m/s]
  double step_width = 0.0;            // lateral spacing of consecutive touchdowns [m]
  double positive_work = 0.0;         // [J]
  double negative_work = 0.0;         // [J], <= 0
  double cop_travel = 0.0;            // CoP path length within the foot [m]
  double max_abs_height_accel = 0.0;  // [m/s^2]
};

namespace detail {

// d/dt by central differences on a possibly non-uniform grid; one-sided at
// the ends.
inline std::vector<double> finite_rate(const std::vector<double>& t, const std::vector<double>& f) {
  const std::size_t n = t.size();
  std::vector<double> r(n, 0.0);
  if (n < 2) return r;
  r[0] = (f[1] - f[0]) / (t[1] - t[0]);
  r[n - 1] = (f[n - 1] - f[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) r[i] = (f[i + 1] - f[i - 1]) / (t[i + 1] - t[i - 1]);
  return r;
}

}  // namespace detail

// Rate of the CoM forward kinetic energy at each sample [W]. The lateral
// term is a diagnostic extension, off by default.
inline std::vector<double> energy_rate_series(const StrideRecord& rec, const GaitParams& p,
                                              bool include_lateral = false) {
  if (rec.samples.size() < 3)
    throw std::invalid_argument("energy_rate_series: need at least 3 samples");
  const std::size_t n = rec.samples.size();
  std::vector<double> t(n), e(n);
  const double ch = std::cos(rec.heading);
  const double sh = std::sin(rec.heading);
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = rec.samples[i];
    t[i] = s.t;
    const double vf = ch * s.vel_x + sh * s.vel_y;
    const double vl = -sh * s.vel_x + ch * s.vel_y;
    e[i] = 0.5 * p.m * (vf * vf + (include_lateral ? vl * vl : 0.0));
  }
  return detail::finite_rate(t, e);
}

// Trapezoidal integrals of the positive and negative parts of the energy
// rate: (positive_work, negative_work).
inline std::pair<double, double> stride_work(const StrideRecord& rec, const GaitParams& p,
                                             bool include_lateral = false) {
  const std::vector<double> rate = energy_rate_series(rec, p, include_lateral);
  double wp = 0.0, wn = 0.0;
  for (std::size_t i = 0; i + 1 < rate.size(); ++i) {
    const double h = rec.samples[i + 1].t - rec.samples[i].t;
    wp += 0.5 * h * (std::max(rate[i], 0.0) + std::max(rate[i + 1], 0.0));
    wn += 0.5 * h * (std::min(rate[i], 0.0) + std::min(rate[i + 1], 0.0));
  }
  return {wp, wn};
}

// CoM vertical acceleration per sample from three-point second differences;
// end samples copy their interior neighbor.
inline std::vector<double> height_accel_series(const StrideRecord& rec) {
  const std::size_t n = rec.samples.size();
  if (n < 3) throw std::invalid_argument("height_accel_series: need at least 3 samples");
  std::vector<double> a(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double t0 = rec.samples[i - 1].t, t1 = rec.samples[i].t, t2 = rec.samples[i + 1].t;
    const double z0 = rec.samples[i - 1].com_z, z1 = rec.samples[i].com_z, z2 = rec.samples[i + 1].com_z;
    a[i] = 2.0 * (z0 / ((t1 - t0) * (t2 - t0)) - z1 / ((t2 - t1) * (t1 - t0)) +
                  z2 / ((t2 - t1) * (t2 - t0)));
  }
  a[0] = a[1];
  a[n - 1] = a[n - 2];
  return a;
}

inline StrideMetrics compute_stride_metrics(const StrideRecord& rec, const GaitParams& p,
                                            bool include_lateral = false) {
  if (rec.samples.size() < 3)
    throw std::invalid_argument("compute_stride_metrics: need at least 3 samples");
  StrideMetrics m;
  m.step_index = rec.step_index;
  m.duration = rec.duration;

  const Sample& first = rec.samples.front();
  const Sample& last = rec.samples.back();
  const Vec2 disp = rotate({last.com_x - first.com_x, last.com_y - first.com_y}, -rec.heading);
  m.avg_forward_velocity = disp.x / m.duration;
  m.avg_lateral_velocity = disp.y / m.duration;

  const Vec2 foot_step =
      rotate({rec.next_foot_x - rec.foot_x, rec.next_foot_y - rec.foot_y}, -rec.heading);
  m.step_width = std::abs(foot_step.y);

  const auto [wp, wn] = stride_work(rec, p, include_lateral);
  m.positive_work = wp;
  m.negative_work = wn;

  for (std::size_t i = 0; i + 1 < rec.samples.size(); ++i) {
    const double dx = rec.samples[i + 1].cop_x - rec.samples[i].cop_x;
    const double dy = rec.samples[i + 1].cop_y - rec.samples[i].cop_y;
    m.cop_travel += std::hypot(dx, dy);
  }

  for (double a : height_accel_series(rec)) m.max_abs_height_accel = std::max(m.max_abs_height_accel, std::abs(a));
  return m;
}

struct AggregateMetrics {
  std::vector<StrideMetrics> strides;  // one row per input record
  int median_index = 0;                // row selected by median positive work
  StrideMetrics median;
  double mean_positive_work = 0.0;
  double mean_negative_work = 0.0;
  double mean_forward_velocity = 0.0;
};

// Per-stride table plus the median stride, selected by positive work (lower
// median, ties broken by step order).
inline AggregateMetrics aggregate(const std::vector<StrideRecord>& records, const GaitParams& p,
                                  bool include_lateral = false) {
  if (records.empty()) throw std::invalid_argument("aggregate: no stride records");
  AggregateMetrics out;
  out.strides.reserve(records.size());
  for (const auto& r : records) out.strides.push_back(compute_stride_metrics(r, p, include_lateral));

  std::vector<int> order(out.strides.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return out.strides[a].positive_work < out.strides[b].positive_work;
  });
  out.median_index = order[(order.size() - 1) / 2];
  out.median = out.strides[out.median_index];

  for (const auto& s : out.strides) {
    out.mean_positive_work += s.positive_work;
    out.mean_negative_work += s.negative_work;
    out.mean_forward_velocity += s.avg_forward_velocity;
  }
  const double n = static_cast<double>(out.strides.size());
  out.mean_positive_work /= n;
  out.mean_negative_work /= n;
  out.mean_forward_velocity /= n;
  return out;
}

}  // namespace quickster
