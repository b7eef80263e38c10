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

// Hybrid closed-loop walking simulation.
//
// Within a step the planar pendulum state is integrated with RK4 under the
// rolling-contact CoP schedule while the leg-length state machine shapes
// the CoM height; the touchdown command is re-evaluated at the control
// rate. At the scheduled exchange the swing foot becomes stance
// instantaneously: the new foot is placed so the CoM offset equals the
// commanded value, angular momentum is carried over (its horizontal
// components are invariant to the contact-point switch on level ground),
// and the heading frame absorbs the yaw accumulated during the step.
//
// Terrain drops keep the controller blind: the stance phase simply extends
// past T until the body, descending under the collapse stage, has lowered
// the swing foot by the drop height.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quickster/alip.hpp"
#include "quickster/leg_length.hpp"
#include "quickster/rolling_contact.hpp"
#include "quickster/step_planner.hpp"
#include "quickster/stride_record.hpp"
#include "quickster/types.hpp"

namespace quickster {

// Commanded planar velocity (heading frame) and yaw rate from t_start on.
struct VelocitySegment {
  double t_start = 0.0;
  Vec2 v{0.0, 0.0};
  double yaw_rate = 0.0;  // [rad/s]
};

struct PushSpec {
  double t = 0.0;      // absolute time [s]
  Vec2 dL{0.0, 0.0};   // angular momentum impulse, world frame [kg m^2/s]
};

struct DropSpec {
  int step_index = 0;  // stride whose touchdown lands below the current ground
  double height = 0.0; // drop [m], positive down
};

struct ScenarioSpec {
  std::string name = "default";
  std::vector<VelocitySegment> velocity_profile;  // sorted by t_start
  std::vector<PushSpec> pushes;
  std::vector<DropSpec> drops;
};

struct SimConfig {
  GaitParams gait;
  LegLengthParams leg;
  RollingContactParams rolling;
  double integrator_dt = 1e-4;       // [s]
  double control_dt = 2e-3;          // [s]
  int n_steps = 20;
  std::uint64_t seed = 0;            // reserved; scenarios are deterministic
  bool warm_start = true;            // start on the closed-form periodic orbit
  double reach_fraction = 0.9;       // command norm limit as a fraction of l_max
  double swing_apex = 0.05;          // swing foot clearance [m]
  bool momentum_correction = false;  // exact momentum transfer across drops
  bool include_lateral_work = false; // add the lateral term to the work metrics
  Side first_stance = Side::kRight;
  ScenarioSpec scenario;
};

inline void validate_config(const SimConfig& c) {
  validate_gait(c.gait);
  validate_leg(c.leg);
  validate_rolling(c.rolling);
  if (!(c.integrator_dt > 0.0))
    throw std::domain_error("sim.integrator_dt: must be positive");
  if (!(c.control_dt >= c.integrator_dt))
    throw std::domain_error("sim.control_dt: must be >= integrator_dt");
  if (!(c.control_dt <= c.gait.T))
    throw std::domain_error("sim.control_dt: must be <= gait.step_duration");
  if (c.n_steps < 1) throw std::domain_error("sim.n_steps: must be >= 1");
  if (!(c.reach_fraction > 0.0))
    throw std::domain_error("sim.reach_fraction: must be positive");
  if (!(c.swing_apex >= 0.0))
    throw std::domain_error("sim.swing_apex: must be non-negative");
  const double horizon = c.n_steps * c.gait.T;
  for (const auto& seg : c.scenario.velocity_profile)
    if (seg.t_start < 0.0)
      throw std::domain_error("scenario.velocity: segment time must be non-negative");
  for (const auto& p : c.scenario.pushes)
    if (p.t < 0.0 || p.t > horizon)
      throw std::domain_error("scenario.push: time outside the simulation horizon");
  for (const auto& d : c.scenario.drops) {
    if (d.step_index < 0 || d.step_index >= c.n_steps)
      throw std::domain_error("scenario.drop: step index outside the simulation horizon");
    if (!(d.height >= 0.0)) throw std::domain_error("scenario.drop: height must be non-negative");
  }
}

// Active command at absolute time t: the last profile segment that has
// started, or the base gait command before any segment applies.
inline VelocitySegment command_at(const ScenarioSpec& sc, const GaitParams& gait, double t) {
  VelocitySegment active;
  active.t_start = -1.0;
  active.v = gait.v_d;
  active.yaw_rate = 0.0;
  for (const auto& seg : sc.velocity_profile)
    if (seg.t_start <= t && seg.t_start >= active.t_start) active = seg;
  return active;
}

struct WorldState {
  double t = 0.0;
  double time_in_step = 0.0;
  int step_index = 0;
  Side stance_side = Side::kRight;
  double heading = 0.0;          // yaw of the heading frame [rad]
  Vec2 stance_foot_w{0.0, 0.0};  // world frame [m]
  double ground_z = 0.0;         // terrain under the stance foot [m]
  AlipState alip;                // heading frame, about the stance foot
  LegLengthState leg;
  Vec2 swing_liftoff_w{0.0, 0.0};
  double swing_liftoff_z = 0.0;
  double pending_drop = 0.0;     // ground drop consumed at the next touchdown [m]
};

struct FallEvent {
  int step_index = 0;
  double t = 0.0;
  std::string reason;
};

struct RunResult {
  std::vector<StrideRecord> strides;
  std::optional<FallEvent> fall;
  WorldState world;  // state after the last completed stride
};

inline double reach_limit(const SimConfig& c) { return c.reach_fraction * c.leg.l_max; }

// World-frame impulse rotated into the heading frame and added to L.
inline void apply_push(WorldState& w, Vec2 dL_world) {
  const Vec2 dl = rotate(dL_world, -w.heading);
  w.alip.L_x += dl.x;
  w.alip.L_y += dl.y;
}

// Push of a given direction (world yaw angle of the CoM velocity change)
// and speed-change magnitude [m/s], expressed as an angular momentum
// impulse about the stance foot.
inline Vec2 push_from_direction(const GaitParams& gait, double direction, double dv) {
  const Vec2 v{dv * std::cos(direction), dv * std::sin(direction)};
  return {-gait.m * gait.dz * v.y, gait.m * gait.dz * v.x};
}

// Registers a blind drop: the next touchdown lands this much below the
// current ground. The controller keeps its nominal-height gains.
inline void apply_terrain_drop(WorldState& w, double drop) {
  if (!(drop >= 0.0)) throw std::domain_error("terrain drop must be non-negative");
  w.pending_drop += drop;
}

inline WorldState make_initial_world(const SimConfig& c) {
  validate_config(c);
  WorldState w;
  w.stance_side = c.first_stance;
  w.leg = LegLengthState{LegStage::kHold, c.leg.l0, 0.0};

  GaitParams g = c.gait;
  g.v_d = command_at(c.scenario, c.gait, 0.0).v;
  double vbar = 0.0;
  double wbar = g.mu;
  if (c.warm_start) {
    double x, L_y, y, L_x;
    forward_fixed_point(g, &x, &L_y);
    lateral_fixed_point(g, w.stance_side, &y, &L_x);
    w.alip = AlipState{x, y, L_x, L_y};
    vbar = steady_forward_speed(g);
    wbar = steady_step_width(g);
  }
  w.swing_liftoff_w =
      w.stance_foot_w + rotate({-vbar * g.T, lateral_sign(opposite(w.stance_side)) * wbar}, w.heading);
  w.swing_liftoff_z = w.ground_z;
  return w;
}

namespace detail {

inline double quintic_blend(double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); }

// Swing apex profile: zero value and slope at both ends, peak = apex.
inline double swing_clearance(double s, double apex) {
  const double u = s * (1.0 - s);
  return 16.0 * apex * u * u;
}

}  // namespace detail

// Simulates one stance phase, mutating the world through the exchange and
// filling rec with the sampled trajectory. Returns a FallEvent instead of
// completing the stride when the state leaves the viable region.
inline std::optional<FallEvent> step_once(WorldState& w, const SimConfig& c, StrideRecord& rec) {
  const GaitParams& gait = c.gait;
  const double T = gait.T;
  const int n_sub = std::max(1, static_cast<int>(std::llround(T / c.integrator_dt)));
  const double dt = T / n_sub;
  const int m_ctl = std::max(1, static_cast<int>(std::llround(c.control_dt / dt)));
  const double reach = reach_limit(c);
  const double l_max = c.leg.l_max;

  for (const auto& d : c.scenario.drops)
    if (d.step_index == w.step_index) apply_terrain_drop(w, d.height);
  const double drop = w.pending_drop;
  const int n_cap = (drop > 0.0) ? 3 * n_sub : n_sub;

  rec = StrideRecord{};
  rec.step_index = w.step_index;
  rec.side = w.stance_side;
  rec.heading = w.heading;
  rec.t_start = w.t;
  rec.foot_x = w.stance_foot_w.x;
  rec.foot_y = w.stance_foot_w.y;
  rec.ground_z = w.ground_z;
  rec.drop_height = drop;
  rec.samples.reserve(static_cast<size_t>(n_cap / m_ctl) + 2);

  std::vector<PushSpec> pending;
  for (const auto& p : c.scenario.pushes)
    if (p.t >= rec.t_start - 0.5 * dt) pending.push_back(p);
  std::sort(pending.begin(), pending.end(),
            [](const PushSpec& a, const PushSpec& b) { return a.t < b.t; });
  std::size_t push_i = 0;

  GaitParams g = gait;  // v_d tracks the live command
  VelocitySegment vcmd = command_at(c.scenario, gait, rec.t_start);
  g.v_d = vcmd.v;
  FootstepCommand cmd = update_touchdown_during_swing(w.alip, g, T, opposite(w.stance_side), reach);

  const auto cop_at = [&](double tau, const AlipState& s) {
    return desired_cop(s, c.rolling, std::clamp(tau / T, 0.0, 1.0));
  };

  double yaw_accum = 0.0;
  double z_at_T = 0.0;
  double invalid_time = 0.0;

  const auto sample_now = [&](int i, double tis) {
    const HeightResult h = height_from_leg(w.leg.l, {w.alip.x, w.alip.y});
    const Vec2 com_w = w.stance_foot_w + rotate({w.alip.x, w.alip.y}, w.heading);
    const Vec2 vel_w = rotate(com_velocity(w.alip, gait), w.heading);
    const Vec2 cop = cop_at(tis, w.alip);

    const double s = std::clamp(tis / T, 0.0, 1.0);
    const Vec2 target_w = com_w - rotate(cmd.offset, w.heading);
    const Vec2 sw = w.swing_liftoff_w + detail::quintic_blend(s) * (target_w - w.swing_liftoff_w);
    double sw_z = w.swing_liftoff_z + detail::quintic_blend(s) * (w.ground_z - w.swing_liftoff_z) +
                  detail::swing_clearance(s, c.swing_apex);
    if (i > n_sub) sw_z -= std::max(z_at_T - h.z, 0.0);  // descends with the collapsing body

    Sample smp;
    smp.t = rec.t_start + tis;
    smp.time_in_step = tis;
    smp.offset_x = w.alip.x;
    smp.offset_y = w.alip.y;
    smp.L_x = w.alip.L_x;
    smp.L_y = w.alip.L_y;
    smp.com_x = com_w.x;
    smp.com_y = com_w.y;
    smp.com_z = w.ground_z + h.z;
    smp.vel_x = vel_w.x;
    smp.vel_y = vel_w.y;
    smp.cop_x = cop.x;
    smp.cop_y = cop.y;
    smp.swing_x = sw.x;
    smp.swing_y = sw.y;
    smp.swing_z = sw_z;
    smp.leg_l = w.leg.l;
    smp.leg_stage = static_cast<int>(w.leg.stage);
    smp.height_valid = h.valid ? 1 : 0;
    rec.samples.push_back(smp);
  };

  int i = 0;
  while (true) {
    const double tis = i * dt;
    const double t_abs = rec.t_start + tis;
    w.time_in_step = tis;

    while (push_i < pending.size() && pending[push_i].t <= t_abs + 1e-12) {
      apply_push(w, pending[push_i].dL);
      rec.push_times.push_back(pending[push_i].t);
      ++push_i;
    }

    const HeightResult h = height_from_leg(w.leg.l, {w.alip.x, w.alip.y});
    if (i == n_sub) z_at_T = h.z;

    bool touchdown = false;
    if (drop <= 0.0) {
      touchdown = (i == n_sub);
    } else if (i > n_sub) {
      touchdown = h.valid && (z_at_T - h.z >= drop);
    }

    if (touchdown) {
      vcmd = command_at(c.scenario, gait, t_abs);
      g.v_d = vcmd.v;
      cmd = update_touchdown_during_swing(w.alip, g, 0.0, opposite(w.stance_side), reach);
      rec.clamped = rec.clamped || cmd.clamped;
      sample_now(i, tis);
      rec.duration = tis;

      const Vec2 com_w = w.stance_foot_w + rotate({w.alip.x, w.alip.y}, w.heading);
      const Vec2 new_foot = com_w - rotate(cmd.offset, w.heading);
      rec.next_foot_x = new_foot.x;
      rec.next_foot_y = new_foot.y;

      Vec2 L{w.alip.L_x, w.alip.L_y};
      if (c.momentum_correction && drop > 0.0) {
        const Vec2 v = com_velocity(w.alip, gait);
        L.x += -gait.m * drop * v.y;
        L.y += gait.m * drop * v.x;
      }
      const Vec2 off_new = rotate(cmd.offset, -yaw_accum);
      const Vec2 L_new = rotate(L, -yaw_accum);

      w.swing_liftoff_w = w.stance_foot_w;
      w.swing_liftoff_z = w.ground_z;
      w.alip = AlipState{off_new.x, off_new.y, L_new.x, L_new.y};
      w.heading += yaw_accum;
      w.stance_foot_w = new_foot;
      w.ground_z -= drop;
      w.pending_drop = 0.0;
      w.stance_side = opposite(w.stance_side);
      w.leg = LegLengthState{LegStage::kHold, c.leg.l0, 0.0};
      w.t = rec.t_start + tis;
      w.time_in_step = 0.0;
      w.step_index += 1;
      return std::nullopt;
    }

    if (i % m_ctl == 0) {
      vcmd = command_at(c.scenario, gait, t_abs);
      g.v_d = vcmd.v;
      cmd = update_touchdown_during_swing(w.alip, g, std::max(T - tis, 0.0),
                                          opposite(w.stance_side), reach);
      rec.clamped = rec.clamped || cmd.clamped;
      sample_now(i, tis);
    }

    if (norm({w.alip.x, w.alip.y}) >= l_max)
      return FallEvent{w.step_index, t_abs, "com offset beyond leg reach"};
    invalid_time = h.valid ? 0.0 : invalid_time + dt;
    if (invalid_time > 0.04)
      return FallEvent{w.step_index, t_abs, "leg cannot span the com offset"};
    if (i >= n_cap)
      return FallEvent{w.step_index, t_abs, "terrain drop beyond the leg descent range"};

    const double progress = std::clamp(tis / T, 0.0, 1.0);
    const double dist = norm({w.alip.x, w.alip.y});
    w.alip = rk4_step(w.alip, gait, tis, dt, cop_at);
    w.leg = advance_leg(w.leg, c.leg, dt, progress, dist);
    yaw_accum += vcmd.yaw_rate * dt;
    ++i;
  }
}

inline RunResult run_scenario(const SimConfig& c) {
  validate_config(c);
  RunResult out;
  out.world = make_initial_world(c);
  out.strides.reserve(static_cast<size_t>(c.n_steps));
  for (int k = 0; k < c.n_steps; ++k) {
    StrideRecord rec;
    const std::optional<FallEvent> fall = step_once(out.world, c, rec);
    if (fall) {
      rec.duration = out.world.time_in_step;
      out.strides.push_back(std::move(rec));
      out.fall = fall;
      break;
    }
    out.strides.push_back(std::move(rec));
  }
  return out;
}

}  // namespace quickster
