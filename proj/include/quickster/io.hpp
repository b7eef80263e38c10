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

// Flat-file exporters: per-sample and per-stride CSV plus a JSON run
// manifest. Floats are written with 17 significant digits so identical
// runs are byte-identical and values round-trip exactly.

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "quickster/config.hpp"
#include "quickster/metrics.hpp"
#include "quickster/simulator.hpp"
#include "quickster/stride_record.hpp"
#include "quickster/version.hpp"

namespace quickster {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// FNV-1a 64-bit over the bytes of s; platform-independent for identical text.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t config_hash(const SimConfig& c) { return fnv1a64(serialize_config(c)); }

namespace detail {

inline void append17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << content;
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace detail

inline std::string trajectory_csv(const std::vector<StrideRecord>& strides) {
  std::string out =
      "step,side,heading,t,time_in_step,offset_x,offset_y,L_x,L_y,com_x,com_y,com_z,"
      "vel_x,vel_y,cop_x,cop_y,swing_x,swing_y,swing_z,leg_l,leg_stage,height_valid\n";
  for (const auto& rec : strides) {
    for (const auto& s : rec.samples) {
      out += std::to_string(rec.step_index);
      out += ',';
      out += side_name(rec.side);
      out += ',';
      detail::append17(out, rec.heading);
      for (double v : {s.t, s.time_in_step, s.offset_x, s.offset_y, s.L_x, s.L_y, s.com_x,
                       s.com_y, s.com_z, s.vel_x, s.vel_y, s.cop_x, s.cop_y, s.swing_x,
                       s.swing_y, s.swing_z, s.leg_l}) {
        out += ',';
        detail::append17(out, v);
      }
      out += ',';
      out += std::to_string(s.leg_stage);
      out += ',';
      out += std::to_string(s.height_valid);
      out += '\n';
    }
  }
  return out;
}

inline std::string strides_csv(const std::vector<StrideRecord>& strides,
                               const std::vector<StrideMetrics>& metrics) {
  if (strides.size() != metrics.size())
    throw std::invalid_argument("strides_csv: records and metrics length mismatch");
  std::string out =
      "step,side,t_start,duration,foot_x,foot_y,ground_z,next_foot_x,next_foot_y,clamped,"
      "drop,n_pushes,avg_vel_forward,avg_vel_lateral,step_width,positive_work,negative_work,"
      "cop_travel,max_abs_height_accel\n";
  for (std::size_t i = 0; i < strides.size(); ++i) {
    const auto& r = strides[i];
    const auto& m = metrics[i];
    out += std::to_string(r.step_index);
    out += ',';
    out += side_name(r.side);
    for (double v : {r.t_start, r.duration, r.foot_x, r.foot_y, r.ground_z, r.next_foot_x,
                     r.next_foot_y}) {
      out += ',';
      detail::append17(out, v);
    }
    out += ',';
    out += r.clamped ? '1' : '0';
    out += ',';
    detail::append17(out, r.drop_height);
    out += ',';
    out += std::to_string(r.push_times.size());
    for (double v : {m.avg_forward_velocity, m.avg_lateral_velocity, m.step_width,
                     m.positive_work, m.negative_work, m.cop_travel, m.max_abs_height_accel}) {
      out += ',';
      detail::append17(out, v);
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json manifest_json(const SimConfig& config, const RunResult& run,
                                    const std::vector<std::string>& output_files,
                                    double wall_clock_s) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(config)));
  nlohmann::json j;
  j["artifact_version"] = kVersion;
  j["csv_schema_version"] = kCsvSchemaVersion;
  j["scenario"] = config.scenario.name;
  j["config_hash_fnv1a64"] = hash;
  j["work_metric"] = "com forward kinetic-energy proxy (no joint-level power on this plant)";
  j["n_strides"] = run.strides.size();
  j["outputs"] = output_files;
  j["wall_clock_s"] = wall_clock_s;
  j["fell"] = run.fall.has_value();
  if (run.fall) {
    j["fall"] = {{"step_index", run.fall->step_index},
                 {"t", run.fall->t},
                 {"reason", run.fall->reason}};
  }
  return j;
}

}  // namespace quickster
