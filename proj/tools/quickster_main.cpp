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

// Command-line front end: scenario runs with CSV/JSON artifacts, speed
// sweeps, rolling-contact A/B comparisons, and push-recovery grids.
//
// Exit codes: 0 success, 2 configuration error, 3 the walker fell,
// 4 file I/O error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quickster/quickster.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitFall = 3;
constexpr int kExitIo = 4;

struct Overrides {
  std::string config_path;
  bool lenient = false;
  std::optional<double> lambda;
  std::optional<double> speed;
  std::optional<int> steps;
  std::optional<unsigned long long> seed;
  std::optional<std::string> rolling;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw quickster::IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw quickster::IoError("cannot read '" + path + "'");
  return ss.str();
}

// Base options shared by every subcommand.
void add_common_options(CLI::App* sub, Overrides* o) {
  sub->add_option("-c,--config", o->config_path, "configuration file (key: value lines)")
      ->check(CLI::ExistingFile);
  sub->add_flag("--lenient", o->lenient, "warn on unknown configuration keys instead of failing");
  sub->add_option("--lambda", o->lambda, "override the step-to-step pole");
  sub->add_option("--speed", o->speed, "override the commanded forward speed [m/s]");
  sub->add_option("--steps", o->steps, "override the number of steps");
  sub->add_option("--seed", o->seed, "override the run seed");
  sub->add_option("--rolling", o->rolling, "override rolling contact (on|off)")
      ->check(CLI::IsMember({"on", "off", "true", "false", "yes", "no", "1", "0"}));
}

quickster::SimConfig load_config(const Overrides& o) {
  quickster::SimConfig cfg;
  if (!o.config_path.empty()) {
    std::vector<std::string> warnings;
    cfg = quickster::parse_config(read_file(o.config_path), o.lenient, &warnings);
    for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  if (o.lambda) cfg.gait.lambda = *o.lambda;
  if (o.speed) cfg.gait.v_d = quickster::Vec2{*o.speed, 0.0};
  if (o.steps) cfg.n_steps = *o.steps;
  if (o.seed) cfg.seed = *o.seed;
  if (o.rolling) cfg.rolling.enabled = quickster::detail::parse_bool("rolling", *o.rolling);
  quickster::validate_config(cfg);
  return cfg;
}

int cmd_run(const Overrides& o, const std::string& out_dir) {
  const quickster::SimConfig cfg = load_config(o);

  const auto t0 = std::chrono::steady_clock::now();
  const quickster::ExperimentResult res = quickster::run_experiment(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw quickster::IoError("cannot create '" + out_dir + "': " + ec.message());
  const auto path = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };

  const std::vector<quickster::StrideRecord> completed(
      res.run.strides.begin(), res.run.strides.begin() + res.n_completed);
  const std::vector<std::string> outputs{"trajectory.csv", "strides.csv", "manifest.json"};
  quickster::detail::write_file(path("trajectory.csv"), quickster::trajectory_csv(res.run.strides));
  quickster::detail::write_file(path("strides.csv"),
                                quickster::strides_csv(completed, res.stride_metrics));
  quickster::detail::write_file(path("manifest.json"),
                                quickster::manifest_json(cfg, res.run, outputs, wall).dump(2) + "\n");

  std::printf("scenario '%s': %zu strides, %.2f s simulated, %.3f s wall\n",
              cfg.scenario.name.c_str(), res.run.strides.size(),
              res.run.strides.empty() ? 0.0
                                      : res.run.strides.back().t_start + res.run.strides.back().duration,
              wall);
  if (res.steady) {
    const quickster::StrideMetrics& med = res.steady->median;
    std::printf("median stride: %.4f m/s forward, width %.4f m, work %+.4f / %+.4f J\n",
                med.avg_forward_velocity, med.step_width, med.positive_work, med.negative_work);
  }
  std::printf("artifacts in %s\n", out_dir.c_str());

  if (res.run.fall) {
    std::fprintf(stderr, "fall at step %d (t=%.3f s): %s\n", res.run.fall->step_index,
                 res.run.fall->t, res.run.fall->reason.c_str());
    return kExitFall;
  }
  return kExitOk;
}

int cmd_sweep(const Overrides& o, std::vector<double> speeds, const std::string& out_csv) {
  const quickster::SimConfig cfg = load_config(o);
  if (speeds.empty()) speeds = {0.3, 0.5, 0.7};

  const std::vector<quickster::SpeedSweepRow> rows = quickster::sweep_speeds(cfg, speeds);

  std::printf("%10s %10s %10s %10s %10s %12s %6s\n", "commanded", "realized", "width",
              "work+ [J]", "work- [J]", "max|zdd|", "fell");
  std::ostringstream csv;
  csv << "commanded,fell,realized,step_width,positive_work,negative_work,max_abs_height_accel\n";
  for (const auto& r : rows) {
    std::printf("%10.3f %10.4f %10.4f %10.4f %10.4f %12.4f %6s\n", r.commanded, r.realized,
                r.step_width, r.positive_work, r.negative_work, r.max_abs_height_accel,
                r.fell ? "yes" : "no");
    csv << quickster::detail::fmt17(r.commanded) << ',' << (r.fell ? 1 : 0) << ','
        << quickster::detail::fmt17(r.realized) << ',' << quickster::detail::fmt17(r.step_width)
        << ',' << quickster::detail::fmt17(r.positive_work) << ','
        << quickster::detail::fmt17(r.negative_work) << ','
        << quickster::detail::fmt17(r.max_abs_height_accel) << '\n';
  }
  if (!out_csv.empty()) {
    quickster::detail::write_file(out_csv, csv.str());
    std::printf("sweep table written to %s\n", out_csv.c_str());
  }
  return kExitOk;
}

int cmd_ab_rolling(const Overrides& o) {
  const quickster::SimConfig cfg = load_config(o);
  const quickster::AbRollingReport rep = quickster::ab_rolling(cfg);

  std::printf("median stride, point foot vs rolling contact:\n");
  std::printf("  positive work: %.4f -> %.4f J (%.1f%% lower)\n", rep.off.median.positive_work,
              rep.on.median.positive_work, rep.positive_reduction_pct);
  std::printf("  negative work: %.4f -> %.4f J (%.1f%% smaller)\n", rep.off.median.negative_work,
              rep.on.median.negative_work, rep.negative_reduction_pct);
  std::printf("  forward speed: %.4f -> %.4f m/s\n", rep.off.median.avg_forward_velocity,
              rep.on.median.avg_forward_velocity);
  std::printf("  max |height accel|: %.4f -> %.4f m/s^2\n", rep.off.median.max_abs_height_accel,
              rep.on.median.max_abs_height_accel);
  if (rep.off_fell || rep.on_fell) {
    std::fprintf(stderr, "fall during %s run\n", rep.off_fell ? "point-foot" : "rolling");
    return kExitFall;
  }
  return kExitOk;
}

int cmd_push_grid(const Overrides& o, int directions, double push_time, double cap, int iters) {
  const quickster::SimConfig cfg = load_config(o);
  const double t_push = push_time >= 0.0 ? push_time : 5.5 * cfg.gait.T;

  const std::vector<quickster::PushBound> bounds =
      quickster::push_grid(cfg, directions, t_push, cap, iters);

  std::printf("largest survivable CoM velocity change, push at t=%.3f s:\n", t_push);
  for (const auto& b : bounds)
    std::printf("  %6.1f deg: %.3f m/s%s\n", b.direction * 180.0 / std::numbers::pi, b.bound_dv,
                b.capped ? " (at search cap)" : "");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-order biped walking: step-placement control, height shaping,"
               " rolling contact, and scenario studies"};
  app.set_version_flag("--version", quickster::kVersion);
  app.require_subcommand(1);

  Overrides o;

  auto* run = app.add_subcommand("run", "simulate one scenario and write CSV/JSON artifacts");
  std::string out_dir = ".";
  add_common_options(run, &o);
  run->add_option("-o,--out", out_dir, "output directory")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "steady run per commanded speed");
  std::vector<double> speeds;
  std::string sweep_csv;
  add_common_options(sweep, &o);
  sweep->add_option("--speeds", speeds, "speeds to sweep [m/s] (default 0.3 0.5 0.7)");
  sweep->add_option("-o,--out", sweep_csv, "also write the table to this CSV file");

  auto* ab = app.add_subcommand("ab-rolling", "same scenario with rolling contact off vs on");
  add_common_options(ab, &o);

  auto* grid = app.add_subcommand("push-grid", "bisect the survivable push per direction");
  int directions = 8;
  double push_time = -1.0;
  double cap = 6.0;
  int iters = 16;
  add_common_options(grid, &o);
  grid->add_option("--directions", directions, "number of push directions")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  grid->add_option("--push-time", push_time, "push instant [s] (default: mid sixth stride)");
  grid->add_option("--cap", cap, "bisection upper bracket [m/s]")->capture_default_str();
  grid->add_option("--iters", iters, "bisection iterations")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(o, out_dir);
    if (sweep->parsed()) return cmd_sweep(o, speeds, sweep_csv);
    if (ab->parsed()) return cmd_ab_rolling(o);
    if (grid->parsed()) return cmd_push_grid(o, directions, push_time, cap, iters);
  } catch (const quickster::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const quickster::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}
