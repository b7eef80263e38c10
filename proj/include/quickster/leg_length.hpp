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

// Stance-leg length schedule: Hold -> Straighten -> MaxHold -> Collapse.
//
// The leg lands at l0 and holds. When the CoM passes near the foot it
// straightens at constant acceleration, decelerating symmetrically once the
// stopping distance reaches l_max, and holds there. Late in stance it
// collapses at constant (negative) acceleration to shed height before the
// exchange; the collapse also drives the descent onto lowered ground.
// CoM height follows from the pendulum geometry z = sqrt(l^2 - x^2 - y^2).

#pragma once

#include <cmath>
#include <stdexcept>

#include "quickster/types.hpp"

namespace quickster {

struct LegLengthParams {
  double l0 = 1.00;        // touchdown leg length [m]
  double l_max = 1.05;     // straightened leg length [m]
  double a_str = 0.3;      // straightening acceleration, > 0 [m/s^2]
  double a_cl = -2.5;      // collapse acceleration, < 0 [m/s^2]
  double beta = 0.97;      // stance fraction at which collapse starts, (0,1]
  double d_trigger = 0.12; // CoM-to-foot planar distance triggering straighten [m]
};

inline void validate_leg(const LegLengthParams& p) {
  if (!(p.l0 > 0.0)) throw std::domain_error("leg.l0: must be positive");
  if (!(p.l_max >= p.l0)) throw std::domain_error("leg.l_max: l_max >= l0 required");
  if (!(p.a_str > 0.0)) throw std::domain_error("leg.a_straighten: must be positive");
  if (!(p.a_cl < 0.0)) throw std::domain_error("leg.a_collapse: must be negative");
  if (!(p.beta > 0.0 && p.beta <= 1.0)) throw std::domain_error("leg.beta: must lie in (0,1]");
  if (!(p.d_trigger >= 0.0)) throw std::domain_error("leg.d_trigger: must be non-negative");
}

enum class LegStage { kHold = 0, kStraighten = 1, kMaxHold = 2, kCollapse = 3 };

inline const char* stage_name(LegStage s) {
  switch (s) {
    case LegStage::kHold: return "hold";
    case LegStage::kStraighten: return "straighten";
    case LegStage::kMaxHold: return "max_hold";
    case LegStage::kCollapse: return "collapse";
  }
  return "?";
}

struct LegLengthState {
  LegStage stage = LegStage::kHold;
  double l = 1.0;      // current length [m]
  double l_dot = 0.0;  // rate [m/s]
};

// Length floor during collapse, as a fraction of l0.
inline double leg_floor(const LegLengthParams& p) { return 0.5 * p.l0; }

// Advances the schedule by dt. stance_progress is elapsed stance time over
// the nominal step duration (may exceed 1 while waiting for touchdown on
// lowered ground); com_to_foot_dist is the planar CoM distance to the
// stance foot. Stage order is monotone within a stance.
inline LegLengthState advance_leg(const LegLengthState& in, const LegLengthParams& p, double dt,
                                  double stance_progress, double com_to_foot_dist) {
  if (dt < 0.0) throw std::domain_error("advance_leg: dt must be non-negative");
  if (dt == 0.0) return in;
  validate_leg(p);

  LegLengthState s = in;
  if (s.stage != LegStage::kCollapse && stance_progress >= p.beta) s.stage = LegStage::kCollapse;
  if (s.stage == LegStage::kHold && com_to_foot_dist < p.d_trigger) s.stage = LegStage::kStraighten;

  double a = 0.0;
  switch (s.stage) {
    case LegStage::kHold:
    case LegStage::kMaxHold:
      s.l_dot = 0.0;
      return s;
    case LegStage::kStraighten: {
      const double remaining = p.l_max - s.l;
      const double stop_dist = s.l_dot * s.l_dot / (2.0 * p.a_str);
      a = (remaining <= stop_dist) ? -p.a_str : p.a_str;
      break;
    }
    case LegStage::kCollapse:
      a = p.a_cl;
      break;
  }

  s.l += s.l_dot * dt + 0.5 * a * dt * dt;
  s.l_dot += a * dt;

  if (s.stage == LegStage::kStraighten) {
    if (s.l >= p.l_max || (a < 0.0 && s.l_dot <= 0.0)) {
      s.l = std::min(s.l, p.l_max);
      s.l_dot = 0.0;
      s.stage = LegStage::kMaxHold;
    }
  } else if (s.stage == LegStage::kCollapse) {
    const double floor = leg_floor(p);
    if (s.l <= floor) {
      s.l = floor;
      s.l_dot = 0.0;
    }
  }
  return s;
}

struct HeightResult {
  double z = 0.0;     // CoM height above the stance contact [m]
  bool valid = true;  // false when the leg cannot span the planar offset
};

// Pendulum-geometry CoM height for leg length l and planar CoM offset.
inline HeightResult height_from_leg(double l, Vec2 com_offset) {
  if (l < 0.0) throw std::domain_error("height_from_leg: leg length must be non-negative");
  const double under = l * l - com_offset.x * com_offset.x - com_offset.y * com_offset.y;
  if (under <= 0.0) return {0.0, false};
  return {std::sqrt(under), true};
}

}  // namespace quickster
