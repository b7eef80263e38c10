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

// Step placement from the predicted touchdown momentum.
//
// The step-to-step dynamics prescribe the CoM offset from the new stance
// foot as a pure momentum feedback, x+ = -(k_p/(m*dz))*L_y(T). With the
// pole-placement gain below, the one-step closed-loop matrix has
// eigenvalues {lambda, 0}: one step of any disturbance is spent exposing
// it in the momentum, the next step's placement removes a (1-lambda)
// fraction of it. Capture-point offsets shift the fixed point to track a
// commanded velocity and keep a nominal step width.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "quickster/alip.hpp"
#include "quickster/types.hpp"

namespace quickster {

struct StepOffsets {
  double xi_sw = 0.0;   // width offset magnitude [m]
  Vec2 xi_sp{0.0, 0.0}; // speed offsets per axis [m]
};

struct FootstepCommand {
  // Predicted CoM offset from the new stance foot at touchdown, heading
  // frame [m]. The touchdown point relative to the CoM is its negation.
  Vec2 offset{0.0, 0.0};
  Side side = Side::kLeft;      // stance side after touchdown
  double touchdown_time = 0.0;  // absolute time of the planned exchange [s]
  bool clamped = false;         // reach limit engaged
};

// Gain placing the nonzero step-to-step eigenvalue at lambda [s].
inline double pole_placement_gain(const GaitParams& p) {
  validate_gait(p);
  const double w = natural_frequency(p);
  const double th = w * p.T;
  return (std::cosh(th) - p.lambda) / (w * std::sinh(th));
}

// One-step map of (offset, momentum) under placement with gain k_p.
// Rank 1 by construction: the new offset is a multiple of the new momentum.
inline TransitionMatrix2x2 closed_loop_matrix(const GaitParams& p, double k_p) {
  const double w = natural_frequency(p);
  const double th = w * p.T;
  const double c = std::cosh(th);
  const double s = std::sinh(th);
  const double mdz = p.m * p.dz;
  return {-k_p * w * s, -(k_p / mdz) * c, mdz * w * s, c};
}

// Capture-point offsets: xi_sw holds consecutive touchdowns a nominal width
// apart; xi_sp shifts the fixed point to a commanded velocity.
inline StepOffsets step_offsets(const GaitParams& p) {
  validate_gait(p);
  const double w = natural_frequency(p);
  const double e = std::exp(w * p.T);
  StepOffsets o;
  o.xi_sw = p.mu / (1.0 + e);
  o.xi_sp.x = -p.v_d.x * p.T / (e - 1.0);
  o.xi_sp.y = -p.v_d.y * p.T / (e - 1.0);
  return o;
}

// Commanded CoM offset from the next stance foot, from the state predicted
// at the touchdown instant. next_side is the stance side after the
// exchange; the width offset sign alternates with it so consecutive steps
// straddle the CoM path. The command norm is clamped to reach_limit.
inline FootstepCommand desired_touchdown(const AlipState& predicted_end_state,
                                         const GaitParams& p, Side next_side,
                                         double reach_limit = std::numeric_limits<double>::infinity(),
                                         double touchdown_time = 0.0) {
  const double k_p = pole_placement_gain(p);
  const StepOffsets off = step_offsets(p);
  const double mdz = p.m * p.dz;

  FootstepCommand cmd;
  cmd.side = next_side;
  cmd.touchdown_time = touchdown_time;
  cmd.offset.x = -(k_p / mdz) * predicted_end_state.L_y - off.xi_sp.x;
  cmd.offset.y = (k_p / mdz) * predicted_end_state.L_x - off.xi_sp.y -
                 lateral_sign(next_side) * off.xi_sw;

  const double r = norm(cmd.offset);
  if (r > reach_limit) {
    cmd.offset = (reach_limit / r) * cmd.offset;
    cmd.clamped = true;
  }
  return cmd;
}

// Re-evaluates the touchdown command mid-swing: the current state is
// propagated over the remaining swing time, then placed. Along an
// unperturbed swing the result is constant.
inline FootstepCommand update_touchdown_during_swing(
    const AlipState& current, const GaitParams& p, double time_remaining, Side next_side,
    double reach_limit = std::numeric_limits<double>::infinity(), double now = 0.0) {
  if (time_remaining < 0.0)
    throw std::domain_error("update_touchdown_during_swing: time_remaining must be non-negative");
  const AlipState end = alip_propagate(current, p, time_remaining);
  return desired_touchdown(end, p, next_side, reach_limit, now + time_remaining);
}

// Stride-averaged forward speed of the closed-loop periodic gait. The
// capture-point speed offset is derived from the LIP, so tracking carries a
// structural factor (1 - e^{-wT})/(1 - lambda).
inline double steady_forward_speed(const GaitParams& p) {
  validate_gait(p);
  const double th = natural_frequency(p) * p.T;
  return p.v_d.x * (1.0 - std::exp(-th)) / (1.0 - p.lambda);
}

// Lateral distance between consecutive touchdowns of the periodic gait.
inline double steady_step_width(const GaitParams& p) {
  validate_gait(p);
  const double th = natural_frequency(p) * p.T;
  return p.mu * (1.0 + std::exp(-th)) / (1.0 + p.lambda);
}

// Period-one fixed point of the closed loop on the forward axis at the
// commanded forward speed: state at the start of a step.
inline void forward_fixed_point(const GaitParams& p, double* x, double* L_y) {
  validate_gait(p);
  const double w = natural_frequency(p);
  const double th = w * p.T;
  const double c = std::cosh(th);
  const double s = std::sinh(th);
  const double delta = p.v_d.x * p.T / (std::exp(th) - 1.0);
  *x = delta * (1.0 - c) / (1.0 - p.lambda);
  *L_y = p.m * p.dz * w * s * delta / (1.0 - p.lambda);
}

// Period-two fixed point of the lateral axis for in-place stepping, for the
// given stance side. A nonzero commanded lateral speed adds the period-one
// component on top (superposition; the axis map is affine).
inline void lateral_fixed_point(const GaitParams& p, Side stance_side, double* y, double* L_x) {
  validate_gait(p);
  const double w = natural_frequency(p);
  const double th = w * p.T;
  const double c = std::cosh(th);
  const double s = std::sinh(th);
  const StepOffsets off = step_offsets(p);

  const double amp = off.xi_sw * (1.0 + c) / (1.0 + p.lambda);
  const double y2 = -lateral_sign(stance_side) * amp;
  const double eta2 = -p.m * p.dz * w * s * y2 / (1.0 + c);

  const double delta_y = p.v_d.y * p.T / (std::exp(th) - 1.0);
  const double y1 = delta_y * (1.0 - c) / (1.0 - p.lambda);
  const double eta1 = p.m * p.dz * w * s * delta_y / (1.0 - p.lambda);

  *y = y2 + y1;
  *L_x = -(eta2 + eta1);
}

}  // namespace quickster
