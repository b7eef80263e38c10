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

// Per-stride sample buffers produced by the simulator and consumed by the
// metrics pass and the CSV writers.

#pragma once

#include <cstdint>
#include <vector>

#include "quickster/leg_length.hpp"
#include "quickster/types.hpp"

namespace quickster {

// One control-rate sample. CoM offset and angular momentum live in the
// heading frame of the current stance foot; world quantities are inertial.
struct Sample {
  double t = 0.0;             // absolute time [s]
  double time_in_step = 0.0;  // time since last foot exchange [s]
  double offset_x = 0.0;      // CoM minus stance foot, heading frame [m]
  double offset_y = 0.0;
  double L_x = 0.0;           // angular momentum about stance foot [kg m^2/s]
  double L_y = 0.0;
  double com_x = 0.0;         // CoM, world frame [m]
  double com_y = 0.0;
  double com_z = 0.0;
  double vel_x = 0.0;         // CoM velocity, world frame [m/s]
  double vel_y = 0.0;
  double cop_x = 0.0;         // CoP offset from stance ankle, heading frame [m]
  double cop_y = 0.0;
  double swing_x = 0.0;       // swing foot, world frame [m]
  double swing_y = 0.0;
  double swing_z = 0.0;
  double leg_l = 0.0;         // stance leg length [m]
  int leg_stage = 0;          // LegStage as an integer
  int height_valid = 1;       // 0 when the leg sphere does not reach the offset
};

// One stance phase: touchdown to touchdown.
struct StrideRecord {
  int step_index = 0;
  Side side = Side::kRight;    // stance side
  double heading = 0.0;        // yaw of the heading frame at this stride [rad]
  double t_start = 0.0;        // absolute touchdown time [s]
  double duration = 0.0;       // realized stance duration [s]
  double foot_x = 0.0;         // stance foot, world frame [m]
  double foot_y = 0.0;
  double ground_z = 0.0;       // terrain height under the stance foot [m]
  double next_foot_x = 0.0;    // commanded touchdown, world frame [m]
  double next_foot_y = 0.0;
  bool clamped = false;        // touchdown command hit the reach limit
  double drop_height = 0.0;    // terrain drop encountered at the end of this stride [m]
  std::vector<double> push_times;  // pushes applied during this stride [s]
  std::vector<Sample> samples;
};

}  // namespace quickster
