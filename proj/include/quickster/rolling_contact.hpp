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

// Heel-to-toe rolling contact as a CoP schedule.
//
// The CoP tracks a fixed fraction of the CoM offset, cop = alpha * offset,
// clamped to the foot polygon. Un-clamped this turns the pendulum dynamics
// into xddot = omega^2 (1 - alpha) x: the system behaves as a pendulum of
// height dz/(1 - alpha), i.e. frequency omega*sqrt(1 - alpha). Early stance
// pins the CoP at the heel so touchdown starts a heel-to-toe roll.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quickster/alip.hpp"
#include "quickster/types.hpp"

namespace quickster {

struct RollingContactParams {
  bool enabled = false;
  double alpha = 0.6;              // CoP tracking fraction, [0,1)
  double heel_extent = 0.08;       // ankle to heel [m]
  double toe_extent = 0.14;        // ankle to toe [m]
  double half_width = 0.04;        // lateral foot half-width [m]
  double heel_hold_fraction = 0.1; // stance fraction with CoP pinned at the heel
};

inline void validate_rolling(const RollingContactParams& p) {
  if (!(p.alpha >= 0.0 && p.alpha < 1.0))
    throw std::domain_error("rolling.alpha: must lie in [0,1)");
  if (!(p.heel_extent >= 0.0)) throw std::domain_error("rolling.heel_extent: must be non-negative");
  if (!(p.toe_extent >= 0.0)) throw std::domain_error("rolling.toe_extent: must be non-negative");
  if (!(p.half_width >= 0.0)) throw std::domain_error("rolling.half_width: must be non-negative");
  if (!(p.heel_hold_fraction >= 0.0 && p.heel_hold_fraction < 1.0))
    throw std::domain_error("rolling.heel_hold_fraction: must lie in [0,1)");
}

// Desired CoP offset from the stance ankle (heading frame). Point foot when
// disabled. During the heel hold the forward component is pinned at the
// heel; afterwards both components track alpha times the CoM offset,
// clamped to the foot extents.
inline Vec2 desired_cop(const AlipState& s, const RollingContactParams& p,
                        double stance_progress) {
  if (!p.enabled) return {0.0, 0.0};
  validate_rolling(p);
  Vec2 cop;
  cop.y = std::clamp(p.alpha * s.y, -p.half_width, p.half_width);
  if (stance_progress < p.heel_hold_fraction) {
    cop.x = -p.heel_extent;
  } else {
    cop.x = std::clamp(p.alpha * s.x, -p.heel_extent, p.toe_extent);
  }
  return cop;
}

// Pendulum frequency of the un-clamped rolling-contact dynamics [1/s].
inline double effective_frequency(const GaitParams& gait, const RollingContactParams& p) {
  const double w = natural_frequency(gait);
  if (!p.enabled) return w;
  validate_rolling(p);
  return w * std::sqrt(1.0 - p.alpha);
}

}  // namespace quickster
