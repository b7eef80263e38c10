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

// Flat `key: value` configuration with dotted sections.
//
//   # walk forward, two pushes
//   gait.vx: 0.7
//   rolling.enabled: on
//   scenario.push.0: 1.14 0 12.5
//
// Unspecified keys keep their defaults. Unknown keys are an error unless
// parsing leniently. serialize_config emits every key in a fixed order
// with 17 significant digits, so serialize -> parse round-trips exactly
// and the serialized text is a stable hashing target.

#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quickster/simulator.hpp"

namespace quickster {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

inline long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return i;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

inline Side parse_side(const std::string& key, const std::string& v) {
  if (v == "left") return Side::kLeft;
  if (v == "right") return Side::kRight;
  throw ConfigError(key + ": expected 'left' or 'right', got '" + v + "'");
}

inline std::vector<double> parse_numbers(const std::string& key, const std::string& v,
                                         std::size_t count) {
  std::istringstream in(v);
  std::vector<double> out;
  double d = 0.0;
  while (in >> d) out.push_back(d);
  if (!in.eof() || out.size() != count) {
    throw ConfigError(key + ": expected " + std::to_string(count) + " numbers, got '" + v + "'");
  }
  return out;
}

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline SimConfig default_config() { return SimConfig{}; }

// Parses a config document over the defaults. Unknown keys throw
// ConfigError unless lenient, in which case they are appended to warnings.
// Constraint violations always throw, citing the offending field.
inline SimConfig parse_config(const std::string& text, bool lenient = false,
                              std::vector<std::string>* warnings = nullptr) {
  SimConfig c = default_config();
  std::map<int, VelocitySegment> vel;
  std::map<int, PushSpec> pushes;
  std::map<int, DropSpec> drops;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = detail::trim(line.substr(0, colon));
    const std::string value = detail::trim(line.substr(colon + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key: value'");

    if (key == "lambda") key = "gait.lambda";
    else if (key == "speed") key = "gait.vx";
    else if (key == "rolling") key = "rolling.enabled";
    else if (key == "seed") key = "sim.seed";

    if (key == "gait.mass") c.gait.m = detail::parse_double(key, value);
    else if (key == "gait.gravity") c.gait.g = detail::parse_double(key, value);
    else if (key == "gait.height") c.gait.dz = detail::parse_double(key, value);
    else if (key == "gait.step_duration") c.gait.T = detail::parse_double(key, value);
    else if (key == "gait.lambda") c.gait.lambda = detail::parse_double(key, value);
    else if (key == "gait.step_width") c.gait.mu = detail::parse_double(key, value);
    else if (key == "gait.vx") c.gait.v_d.x = detail::parse_double(key, value);
    else if (key == "gait.vy") c.gait.v_d.y = detail::parse_double(key, value);
    else if (key == "leg.l0") c.leg.l0 = detail::parse_double(key, value);
    else if (key == "leg.l_max") c.leg.l_max = detail::parse_double(key, value);
    else if (key == "leg.a_straighten") c.leg.a_str = detail::parse_double(key, value);
    else if (key == "leg.a_collapse") c.leg.a_cl = detail::parse_double(key, value);
    else if (key == "leg.beta") c.leg.beta = detail::parse_double(key, value);
    else if (key == "leg.d_trigger") c.leg.d_trigger = detail::parse_double(key, value);
    else if (key == "rolling.enabled") c.rolling.enabled = detail::parse_bool(key, value);
    else if (key == "rolling.alpha") c.rolling.alpha = detail::parse_double(key, value);
    else if (key == "rolling.heel_extent") c.rolling.heel_extent = detail::parse_double(key, value);
    else if (key == "rolling.toe_extent") c.rolling.toe_extent = detail::parse_double(key, value);
    else if (key == "rolling.half_width") c.rolling.half_width = detail::parse_double(key, value);
    else if (key == "rolling.heel_hold_fraction")
      c.rolling.heel_hold_fraction = detail::parse_double(key, value);
    else if (key == "sim.integrator_dt") c.integrator_dt = detail::parse_double(key, value);
    else if (key == "sim.control_dt") c.control_dt = detail::parse_double(key, value);
    else if (key == "sim.n_steps") c.n_steps = static_cast<int>(detail::parse_int(key, value));
    else if (key == "sim.seed") c.seed = static_cast<std::uint64_t>(detail::parse_int(key, value));
    else if (key == "sim.warm_start") c.warm_start = detail::parse_bool(key, value);
    else if (key == "sim.reach_fraction") c.reach_fraction = detail::parse_double(key, value);
    else if (key == "sim.swing_apex") c.swing_apex = detail::parse_double(key, value);
    else if (key == "sim.momentum_correction")
      c.momentum_correction = detail::parse_bool(key, value);
    else if (key == "sim.first_stance") c.first_stance = detail::parse_side(key, value);
    else if (key == "metrics.include_lateral")
      c.include_lateral_work = detail::parse_bool(key, value);
    else if (key == "scenario.name") c.scenario.name = value;
    else if (key.rfind("scenario.velocity.", 0) == 0) {
      const int idx = static_cast<int>(detail::parse_int(key, key.substr(18)));
      const auto v = detail::parse_numbers(key, value, 4);
      vel[idx] = VelocitySegment{v[0], {v[1], v[2]}, v[3]};
    } else if (key.rfind("scenario.push.", 0) == 0) {
      const int idx = static_cast<int>(detail::parse_int(key, key.substr(14)));
      const auto v = detail::parse_numbers(key, value, 3);
      pushes[idx] = PushSpec{v[0], {v[1], v[2]}};
    } else if (key.rfind("scenario.drop.", 0) == 0) {
      const int idx = static_cast<int>(detail::parse_int(key, key.substr(14)));
      const auto v = detail::parse_numbers(key, value, 2);
      drops[idx] = DropSpec{static_cast<int>(v[0]), v[1]};
    } else if (lenient) {
      if (warnings) warnings->push_back("unknown key '" + key + "' ignored");
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }

  for (const auto& [idx, seg] : vel) c.scenario.velocity_profile.push_back(seg);
  for (const auto& [idx, p] : pushes) c.scenario.pushes.push_back(p);
  for (const auto& [idx, d] : drops) c.scenario.drops.push_back(d);
  std::stable_sort(c.scenario.velocity_profile.begin(), c.scenario.velocity_profile.end(),
                   [](const VelocitySegment& a, const VelocitySegment& b) { return a.t_start < b.t_start; });
  std::stable_sort(c.scenario.pushes.begin(), c.scenario.pushes.end(),
                   [](const PushSpec& a, const PushSpec& b) { return a.t < b.t; });
  std::stable_sort(c.scenario.drops.begin(), c.scenario.drops.end(),
                   [](const DropSpec& a, const DropSpec& b) { return a.step_index < b.step_index; });

  try {
    validate_config(c);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

// Canonical text form: every key, fixed order, floats with 17 significant
// digits. parse_config(serialize_config(c)) reproduces c exactly.
inline std::string serialize_config(const SimConfig& c) {
  using detail::fmt17;
  std::string out;
  const auto kv = [&out](const std::string& k, const std::string& v) {
    out += k;
    out += ": ";
    out += v;
    out += "\n";
  };
  kv("gait.mass", fmt17(c.gait.m));
  kv("gait.gravity", fmt17(c.gait.g));
  kv("gait.height", fmt17(c.gait.dz));
  kv("gait.step_duration", fmt17(c.gait.T));
  kv("gait.lambda", fmt17(c.gait.lambda));
  kv("gait.step_width", fmt17(c.gait.mu));
  kv("gait.vx", fmt17(c.gait.v_d.x));
  kv("gait.vy", fmt17(c.gait.v_d.y));
  kv("leg.l0", fmt17(c.leg.l0));
  kv("leg.l_max", fmt17(c.leg.l_max));
  kv("leg.a_straighten", fmt17(c.leg.a_str));
  kv("leg.a_collapse", fmt17(c.leg.a_cl));
  kv("leg.beta", fmt17(c.leg.beta));
  kv("leg.d_trigger", fmt17(c.leg.d_trigger));
  kv("rolling.enabled", c.rolling.enabled ? "true" : "false");
  kv("rolling.alpha", fmt17(c.rolling.alpha));
  kv("rolling.heel_extent", fmt17(c.rolling.heel_extent));
  kv("rolling.toe_extent", fmt17(c.rolling.toe_extent));
  kv("rolling.half_width", fmt17(c.rolling.half_width));
  kv("rolling.heel_hold_fraction", fmt17(c.rolling.heel_hold_fraction));
  kv("sim.integrator_dt", fmt17(c.integrator_dt));
  kv("sim.control_dt", fmt17(c.control_dt));
  kv("sim.n_steps", std::to_string(c.n_steps));
  kv("sim.seed", std::to_string(c.seed));
  kv("sim.warm_start", c.warm_start ? "true" : "false");
  kv("sim.reach_fraction", fmt17(c.reach_fraction));
  kv("sim.swing_apex", fmt17(c.swing_apex));
  kv("sim.momentum_correction", c.momentum_correction ? "true" : "false");
  kv("sim.first_stance", side_name(c.first_stance));
  kv("metrics.include_lateral", c.include_lateral_work ? "true" : "false");
  kv("scenario.name", c.scenario.name);
  for (std::size_t i = 0; i < c.scenario.velocity_profile.size(); ++i) {
    const auto& s = c.scenario.velocity_profile[i];
    kv("scenario.velocity." + std::to_string(i),
       fmt17(s.t_start) + " " + fmt17(s.v.x) + " " + fmt17(s.v.y) + " " + fmt17(s.yaw_rate));
  }
  for (std::size_t i = 0; i < c.scenario.pushes.size(); ++i) {
    const auto& p = c.scenario.pushes[i];
    kv("scenario.push." + std::to_string(i),
       fmt17(p.t) + " " + fmt17(p.dL.x) + " " + fmt17(p.dL.y));
  }
  for (std::size_t i = 0; i < c.scenario.drops.size(); ++i) {
    const auto& d = c.scenario.drops[i];
    kv("scenario.drop." + std::to_string(i), std::to_string(d.step_index) + " " + fmt17(d.height));
  }
  return out;
}

}  // namespace quickster
