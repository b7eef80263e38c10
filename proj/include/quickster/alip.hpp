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

// Angular-momentum linear inverted pendulum (ALIP) about the stance foot.
//
// State per horizontal axis is (CoM offset, angular momentum about the
// contact point). With the CoM at height dz above the contact and flat
// ground, L_y = m*dz*xdot and L_x = -m*dz*ydot, so the planar dynamics are
//   xdot = L_y/(m*dz),  L_y_dot = m*g*(x - cop_x)
//   ydot = -L_x/(m*dz), L_x_dot = -m*g*(y - cop_y)
// Axes are stance-foot-relative in the heading frame: x forward, y left.

#pragma once

#include <cmath>
#include <stdexcept>

#include "quickster/types.hpp"

namespace quickster {

struct GaitParams {
  double m = 80.0;      // total mass [kg]
  double g = 9.81;      // gravity [m/s^2]
  double dz = 1.0;      // nominal CoM height above the contact [m]
  double T = 0.38;      // step duration [s]
  double lambda = 0.3;  // step-to-step closed-loop eigenvalue, |lambda| < 1
  double mu = 0.18;     // nominal step width [m]
  Vec2 v_d{0.0, 0.0};   // commanded planar velocity, heading frame [m/s]
};

inline void validate_gait(const GaitParams& p) {
  if (!(p.m > 0.0)) throw std::domain_error("gait.mass: must be positive");
  if (!(p.g > 0.0)) throw std::domain_error("gait.gravity: must be positive");
  if (!(p.dz > 0.0)) throw std::domain_error("gait.height: must be positive");
  if (!(p.T > 0.0)) throw std::domain_error("gait.step_duration: must be positive");
  if (!(std::abs(p.lambda) < 1.0)) throw std::domain_error("gait.lambda: |lambda| < 1 required");
  if (!(p.mu >= 0.0)) throw std::domain_error("gait.step_width: must be non-negative");
}

struct AlipState {
  double x = 0.0;    // CoM offset from stance foot, forward [m]
  double y = 0.0;    // CoM offset from stance foot, lateral [m]
  double L_x = 0.0;  // angular momentum about the contact, lateral axis [kg m^2/s]
  double L_y = 0.0;  // angular momentum about the contact, forward axis [kg m^2/s]
};

// Pendulum natural frequency sqrt(g/dz) [1/s].
inline double natural_frequency(const GaitParams& p) {
  if (!(p.dz > 0.0) || !(p.g > 0.0))
    throw std::domain_error("natural_frequency: g and dz must be positive");
  return std::sqrt(p.g / p.dz);
}

// One-axis transition matrix acting on (position, momentum) or
// (position, velocity) column pairs.
struct TransitionMatrix2x2 {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;

  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
};

inline TransitionMatrix2x2 operator*(const TransitionMatrix2x2& a, const TransitionMatrix2x2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

// Closed-form ALIP transition over dt for one axis on (offset, momentum).
inline TransitionMatrix2x2 alip_transition(const GaitParams& p, double dt) {
  if (dt < 0.0) throw std::domain_error("alip_transition: dt must be non-negative");
  validate_gait(p);
  const double w = natural_frequency(p);
  const double c = std::cosh(w * dt);
  const double s = std::sinh(w * dt);
  const double mdz = p.m * p.dz;
  return {c, s / (mdz * w), mdz * w * s, c};
}

// Classic LIP transition on (offset, velocity); similar to alip_transition
// under the velocity/momentum change of basis diag(1, 1/(m*dz)).
inline TransitionMatrix2x2 lip_transition(const GaitParams& p, double dt) {
  if (dt < 0.0) throw std::domain_error("lip_transition: dt must be non-negative");
  validate_gait(p);
  const double w = natural_frequency(p);
  const double c = std::cosh(w * dt);
  const double s = std::sinh(w * dt);
  return {c, s / w, w * s, c};
}

// Advances both axes by the closed-form map about a point foot at the origin.
// The lateral axis evolves (y, -L_x) through the same matrix as (x, L_y).
inline AlipState alip_propagate(const AlipState& s, const GaitParams& p, double dt) {
  const TransitionMatrix2x2 m = alip_transition(p, dt);
  AlipState out;
  out.x = m.a11 * s.x + m.a12 * s.L_y;
  out.L_y = m.a21 * s.x + m.a22 * s.L_y;
  const double eta = -s.L_x;
  const double y = m.a11 * s.y + m.a12 * eta;
  const double eta1 = m.a21 * s.y + m.a22 * eta;
  out.y = y;
  out.L_x = -eta1;
  return out;
}

struct AlipDerivatives {
  double dx = 0.0;
  double dy = 0.0;
  double dL_x = 0.0;
  double dL_y = 0.0;
};

// Continuous dynamics with a general center of pressure offset from the
// stance ankle. cop = (0,0) recovers the point-foot model.
inline AlipDerivatives alip_vector_field(const AlipState& s, const GaitParams& p, Vec2 cop) {
  const double mdz = p.m * p.dz;
  AlipDerivatives d;
  d.dx = s.L_y / mdz;
  d.dy = -s.L_x / mdz;
  d.dL_y = p.m * p.g * (s.x - cop.x);
  d.dL_x = -p.m * p.g * (s.y - cop.y);
  return d;
}

// CoM planar velocity implied by the momentum state (heading frame).
inline Vec2 com_velocity(const AlipState& s, const GaitParams& p) {
  const double mdz = p.m * p.dz;
  return {s.L_y / mdz, -s.L_x / mdz};
}

namespace detail {
inline AlipState axpy(const AlipState& s, const AlipDerivatives& d, double h) {
  return {s.x + h * d.dx, s.y + h * d.dy, s.L_x + h * d.dL_x, s.L_y + h * d.dL_y};
}
}  // namespace detail

// One classic 4th-order step of the CoP-driven field. cop_at(tau, state)
// supplies the CoP at stage time tau, so state-feedback CoP laws integrate
// as continuous feedback rather than a held value.
template <typename CopFn>
AlipState rk4_step(const AlipState& s, const GaitParams& p, double tau, double dt, CopFn cop_at) {
  const AlipDerivatives k1 = alip_vector_field(s, p, cop_at(tau, s));
  const AlipState s2 = detail::axpy(s, k1, 0.5 * dt);
  const AlipDerivatives k2 = alip_vector_field(s2, p, cop_at(tau + 0.5 * dt, s2));
  const AlipState s3 = detail::axpy(s, k2, 0.5 * dt);
  const AlipDerivatives k3 = alip_vector_field(s3, p, cop_at(tau + 0.5 * dt, s3));
  const AlipState s4 = detail::axpy(s, k3, dt);
  const AlipDerivatives k4 = alip_vector_field(s4, p, cop_at(tau + dt, s4));
  AlipState out;
  out.x = s.x + dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  out.y = s.y + dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
  out.L_x = s.L_x + dt / 6.0 * (k1.dL_x + 2.0 * k2.dL_x + 2.0 * k3.dL_x + k4.dL_x);
  out.L_y = s.L_y + dt / 6.0 * (k1.dL_y + 2.0 * k2.dL_y + 2.0 * k3.dL_y + k4.dL_y);
  return out;
}

}  // namespace quickster
