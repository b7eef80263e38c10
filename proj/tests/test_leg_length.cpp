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

#include "quickster/leg_length.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace quickster {
namespace {

LegLengthParams ref_leg() {
  LegLengthParams p;
  p.l0 = 0.95;
  p.l_max = 1.00;
  p.a_str = 2.0;
  p.a_cl = -3.0;
  p.beta = 0.8;
  p.d_trigger = 0.05;
  return p;
}

LegLengthState fresh(const LegLengthParams& p) {
  LegLengthState s;
  s.stage = LegStage::kHold;
  s.l = p.l0;
  s.l_dot = 0.0;
  return s;
}

TEST(AdvanceLeg, HoldsFarFromFoot) {
  const LegLengthParams p = ref_leg();
  LegLengthState s = fresh(p);
  for (int i = 0; i < 100; ++i) s = advance_leg(s, p, 1e-3, 0.1, 0.3);
  EXPECT_EQ(s.stage, LegStage::kHold);
  EXPECT_DOUBLE_EQ(s.l, p.l0);
  EXPECT_DOUBLE_EQ(s.l_dot, 0.0);
}

TEST(AdvanceLeg, ZeroDtIsIdentity) {
  const LegLengthParams p = ref_leg();
  LegLengthState s = fresh(p);
  s.stage = LegStage::kStraighten;
  s.l = 0.97;
  s.l_dot = 0.1;
  const LegLengthState out = advance_leg(s, p, 0.0, 0.5, 0.0);
  EXPECT_EQ(out.stage, s.stage);
  EXPECT_DOUBLE_EQ(out.l, s.l);
  EXPECT_DOUBLE_EQ(out.l_dot, s.l_dot);
}

TEST(AdvanceLeg, RejectsNegativeDt) {
  EXPECT_THROW(advance_leg(fresh(ref_leg()), ref_leg(), -1e-6, 0.0, 1.0), std::domain_error);
}

// Full-stance trajectory against a piecewise closed form. The CoM-to-foot
// distance is driven as 0.2 - t, so straightening triggers at t1 = 0.15.
// With a_str = 2 the symmetric profile switches to deceleration at
// t1 + sqrt(0.025), but collapse preempts it at beta*T = 0.32.
TEST(AdvanceLeg, PiecewiseClosedFormTimeline) {
  const LegLengthParams p = ref_leg();
  const double T = 0.4;
  const double t1 = 0.15;
  const double tau = std::sqrt(0.025);
  const double t_sw = t1 + tau;       // accel -> decel switch, ~0.3081
  const double t_cl = p.beta * T;     // collapse start, 0.32

  // Decel-phase state at the collapse handoff.
  const double dcl = t_cl - t_sw;
  const double l_cl = p.l0 + 0.025 + 2.0 * tau * dcl - dcl * dcl;
  const double v_cl = 2.0 * tau - 2.0 * dcl;

  auto expected = [&](double t, double* l, double* ld) {
    if (t <= t1) {
      *l = p.l0;
      *ld = 0.0;
    } else if (t <= t_sw) {
      *l = p.l0 + (t - t1) * (t - t1);
      *ld = 2.0 * (t - t1);
    } else if (t <= t_cl) {
      const double dt = t - t_sw;
      const double v0 = 2.0 * tau;
      *l = p.l0 + 0.025 + v0 * dt - dt * dt;
      *ld = v0 - 2.0 * dt;
    } else {
      const double dt = t - t_cl;
      *l = l_cl + v_cl * dt - 1.5 * dt * dt;
      *ld = v_cl - 3.0 * dt;
    }
  };

  const double dt = 1e-6;
  LegLengthState s = fresh(p);
  double t = 0.0;
  const double probes[] = {0.1, 0.2, 0.28, 0.31, 0.35, 0.4};
  std::size_t pi = 0;
  const int n = static_cast<int>(std::lround(T / dt));
  for (int i = 0; i < n; ++i) {
    s = advance_leg(s, p, dt, t / T, 0.2 - t);
    t = (i + 1) * dt;
    if (pi < std::size(probes) && std::abs(t - probes[pi]) < 0.5 * dt) {
      double el = 0.0, eld = 0.0;
      expected(t, &el, &eld);
      EXPECT_NEAR(s.l, el, 1e-5) << "t=" << t;
      EXPECT_NEAR(s.l_dot, eld, 1e-4) << "t=" << t;
      ++pi;
    }
  }
  EXPECT_EQ(pi, std::size(probes));
  EXPECT_EQ(s.stage, LegStage::kCollapse);
}

TEST(AdvanceLeg, SaturatesAtMaxAndHolds) {
  const LegLengthParams p = ref_leg();
  LegLengthState s = fresh(p);
  // Straighten with the trigger held on, collapse never reached.
  for (int i = 0; i < 500000; ++i) s = advance_leg(s, p, 1e-5, 0.1, 0.0);
  EXPECT_EQ(s.stage, LegStage::kMaxHold);
  EXPECT_NEAR(s.l, p.l_max, 1e-6);
  EXPECT_DOUBLE_EQ(s.l_dot, 0.0);
}

TEST(AdvanceLeg, CollapseTriggersOnProgressFromAnyStage) {
  const LegLengthParams p = ref_leg();
  LegLengthState s = fresh(p);
  s = advance_leg(s, p, 1e-3, p.beta, 1.0);  // straight from Hold
  EXPECT_EQ(s.stage, LegStage::kCollapse);
  EXPECT_LT(s.l_dot, 0.0);
}

TEST(AdvanceLeg, CollapseStopsAtFloor) {
  const LegLengthParams p = ref_leg();
  LegLengthState s = fresh(p);
  for (int i = 0; i < 200000; ++i) s = advance_leg(s, p, 1e-4, 2.0, 1.0);
  EXPECT_EQ(s.stage, LegStage::kCollapse);
  EXPECT_DOUBLE_EQ(s.l, leg_floor(p));
  EXPECT_DOUBLE_EQ(s.l_dot, 0.0);
  EXPECT_DOUBLE_EQ(leg_floor(p), 0.5 * p.l0);
}

// Stage index never decreases within a stance, whatever the drive signals.
TEST(AdvanceLeg, StageOrderIsMonotone) {
  const LegLengthParams p = ref_leg();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(0.0, 0.4);
  for (int trial = 0; trial < 20; ++trial) {
    LegLengthState s = fresh(p);
    int last = 0;
    for (int i = 0; i < 2000; ++i) {
      const double progress = i / 2000.0;
      s = advance_leg(s, p, 2e-4, progress, dist(rng));
      EXPECT_GE(static_cast<int>(s.stage), last);
      last = static_cast<int>(s.stage);
    }
  }
}

// Length is continuous: per-substep change bounded by rate and acceleration.
TEST(AdvanceLeg, LengthIsContinuous) {
  const LegLengthParams p = ref_leg();
  const double dt = 1e-3;
  const double a_max = std::max(p.a_str, -p.a_cl);
  LegLengthState s = fresh(p);
  for (int i = 0; i < 400; ++i) {
    const LegLengthState next = advance_leg(s, p, dt, i * dt / 0.4, 0.2 - i * dt);
    EXPECT_LE(std::abs(next.l - s.l), std::abs(s.l_dot) * dt + a_max * dt * dt);
    s = next;
  }
}

TEST(HeightFromLeg, VerticalLegGivesFullLength) {
  const HeightResult h = height_from_leg(1.0, Vec2{0.0, 0.0});
  EXPECT_TRUE(h.valid);
  EXPECT_DOUBLE_EQ(h.z, 1.0);
}

TEST(HeightFromLeg, PythagoreanTriple) {
  const HeightResult h = height_from_leg(0.5, Vec2{0.3, 0.0});
  EXPECT_TRUE(h.valid);
  EXPECT_NEAR(h.z, 0.4, 1e-15);
  const HeightResult h2 = height_from_leg(0.5, Vec2{0.0, -0.3});
  EXPECT_NEAR(h2.z, 0.4, 1e-15);
}

TEST(HeightFromLeg, OverextensionIsInvalid) {
  const HeightResult h = height_from_leg(0.5, Vec2{0.5, 0.1});
  EXPECT_FALSE(h.valid);
  EXPECT_DOUBLE_EQ(h.z, 0.0);
  EXPECT_FALSE(height_from_leg(0.3, Vec2{0.3, 0.0}).valid);  // z = 0 exactly
}

TEST(HeightFromLeg, RejectsNegativeLength) {
  EXPECT_THROW(height_from_leg(-0.1, Vec2{0.0, 0.0}), std::domain_error);
}

TEST(ValidateLeg, RejectsBadRanges) {
  LegLengthParams p = ref_leg();
  p.l_max = 0.9;  // below l0
  EXPECT_THROW(validate_leg(p), std::domain_error);
  p = ref_leg();
  p.a_cl = 0.5;
  EXPECT_THROW(validate_leg(p), std::domain_error);
  p = ref_leg();
  p.beta = 0.0;
  EXPECT_THROW(validate_leg(p), std::domain_error);
  p = ref_leg();
  p.beta = 1.0;
  EXPECT_NO_THROW(validate_leg(p));
}

}  // namespace
}  // namespace quickster
