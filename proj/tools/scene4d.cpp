// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// scene4d: synth | fuse | render | baseline | eval
// Exit codes: 0 success, 2 validation error, 3 I/O error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "scene4d/io.hpp"
#include "scene4d/pipeline.hpp"

namespace fs = std::filesystem;
using namespace scene4d;

namespace {

struct CommonFlags {
  std::string config;
  std::uint64_t seed = 0;
  std::string preset, mode, resolution, modality;
  int splat_radius = 0;
  double far_plane = 0.0;
  int jobs = 1;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* radius_opt = nullptr;
  CLI::Option* far_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override it");
  f.seed_opt = cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--preset", f.preset, "sampling bounds preset")->check(CLI::IsMember({"max90", "max180"}));
  cmd->add_option("--mode", f.mode, "trajectory mode")->check(CLI::IsMember({"gradual", "direct", "sine"}));
  cmd->add_option("--resolution", f.resolution, "output resolution WxH");
  f.radius_opt = cmd->add_option("--splat-radius", f.splat_radius, "splat footprint radius in pixels");
  f.far_opt = cmd->add_option("--far-plane", f.far_plane, "far plane in meters");
  cmd->add_option("--modality", f.modality, "rgb or semantic")->check(CLI::IsMember({"rgb", "semantic"}));
  f.jobs_opt = cmd->add_option("--jobs", f.jobs, "worker threads");
}

RunConfig resolve_config(const CommonFlags& f, nlohmann::json extra = nlohmann::json::object()) {
  RunConfig base;
  if (!f.config.empty()) base = run_config_from_json(read_json(f.config));
  nlohmann::json o = std::move(extra);
  if (*f.seed_opt) o["seed"] = f.seed;
  if (!f.preset.empty()) o["preset"] = f.preset;
  if (!f.mode.empty()) o["mode"] = f.mode;
  if (!f.resolution.empty()) o["resolution"] = f.resolution;
  if (*f.radius_opt) o["splat_radius"] = f.splat_radius;
  if (*f.far_opt) o["far_plane"] = f.far_plane;
  if (!f.modality.empty()) o["modality"] = f.modality;
  if (*f.jobs_opt) o["jobs"] = f.jobs;
  return run_config_from_json(o, base);
}

// A trajectory file holds one trajectory, or a dataset's trajectories.json (select by index).
TrajectorySpec load_trajectory(const std::string& path, int index) {
  const auto j = read_json(path);
  if (j.contains("trajectories")) {
    const auto& list = j.at("trajectories");
    if (index < 0 || index >= static_cast<int>(list.size()))
      throw ValidationError("trajectory index " + std::to_string(index) + " out of range");
    return trajectory_from_json(list.at(index).at("trajectory"));
  }
  return trajectory_from_json(j);
}

// Without a trajectory file: a seeded pose pair over the first clip frames.
TrajectorySpec sampled_trajectory(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  const auto bounds = SamplingBounds::preset(cfg.preset);
  auto [src, dst] = sample_pose_pair(rng, bounds, kEvaluationSourceElevationDeg);
  TrajectorySpec s;
  s.mode = cfg.mode;
  s.frames = cfg.frames;
  s.source = src;
  s.destination = dst;
  s.preset = cfg.preset;
  s.seed = cfg.seed;
  s.clip.count = cfg.frames;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scene4d: 4D scene data engine"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto* synth = app.add_subcommand("synth", "generate synthetic multi-view RGB-D scenes");
  std::string synth_out;
  int scenes = 0, scene_frames = 0, cameras = 0;
  synth->add_option("--out", synth_out, "dataset directory")->required();
  auto* scenes_opt = synth->add_option("--scenes", scenes, "number of scenes");
  auto* sframes_opt = synth->add_option("--scene-frames", scene_frames, "frames per scene");
  auto* cams_opt = synth->add_option("--cameras", cameras, "cameras per scene");
  add_common(synth, flags);

  auto* fuse = app.add_subcommand("fuse", "fuse all views of each frame into a point cloud");
  std::string fuse_scene, fuse_out;
  fuse->add_option("--scene", fuse_scene, "scene directory")->required();
  fuse->add_option("--out", fuse_out, "output directory (default <scene>/fused)");
  add_common(fuse, flags);

  auto* render = app.add_subcommand("render", "render fused clouds along a camera trajectory");
  std::string render_scene, render_traj, render_out;
  int render_index = 0;
  render->add_option("--scene", render_scene, "scene directory")->required();
  render->add_option("--trajectory", render_traj, "trajectory JSON (or trajectories.json)");
  render->add_option("--index", render_index, "entry of trajectories.json");
  render->add_option("--out", render_out, "run directory")->required();
  add_common(render, flags);

  auto* baseline = app.add_subcommand("baseline", "reproject the source view with ground-truth depth, then evaluate");
  std::string base_scene, base_traj, base_out;
  int base_index = 0;
  baseline->add_option("--scene", base_scene, "scene directory")->required();
  baseline->add_option("--trajectory", base_traj, "trajectory JSON (or trajectories.json)");
  baseline->add_option("--index", base_index, "entry of trajectories.json");
  baseline->add_option("--out", base_out, "run directory")->required();
  add_common(baseline, flags);

  auto* eval = app.add_subcommand("eval", "evaluate predicted runs, or sweep the baseline over rotations");
  std::string eval_pred, eval_scene, eval_traj, eval_report, sweep, csv;
  int eval_index = 0;
  bool last_only = false, no_occ = false;
  eval->add_option("--pred", eval_pred, "run directory or directory of runs");
  eval->add_option("--scene", eval_scene, "ground-truth scene (dataset root with --sweep)")->required();
  eval->add_option("--trajectory", eval_traj, "override the runs' trajectory.json");
  eval->add_option("--index", eval_index, "entry of trajectories.json");
  eval->add_option("--report", eval_report, "report JSON path (default <pred>/report.json)");
  eval->add_flag("--last-frame-only", last_only, "score the final frame only");
  eval->add_flag("--no-occluded-split", no_occ, "skip the occluded split");
  eval->add_option("--sweep", sweep, "azimuth angles 'a,b,c' or 'start:stop:step'");
  eval->add_option("--csv", csv, "sweep CSV path (default sweep.csv)");
  add_common(eval, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    nlohmann::json out;
    if (*synth) {
      nlohmann::json extra = nlohmann::json::object();
      if (*scenes_opt) extra["scene_count"] = scenes;
      if (*sframes_opt) extra["scene_frames"] = scene_frames;
      if (*cams_opt) extra["camera_count"] = cameras;
      out = cmd_synth(synth_out, resolve_config(flags, extra));
    } else if (*fuse) {
      const RunConfig cfg = resolve_config(flags);
      out = cmd_fuse(fuse_scene, cfg, fuse_out.empty() ? std::nullopt : std::optional<fs::path>(fuse_out));
    } else if (*render) {
      const RunConfig cfg = resolve_config(flags);
      const auto spec = render_traj.empty() ? sampled_trajectory(cfg) : load_trajectory(render_traj, render_index);
      out = cmd_render(render_scene, spec, render_out, cfg);
    } else if (*baseline) {
      const RunConfig cfg = resolve_config(flags);
      const auto spec = base_traj.empty() ? sampled_trajectory(cfg) : load_trajectory(base_traj, base_index);
      out = cmd_baseline(base_scene, spec, base_out, cfg);
    } else if (*eval) {
      const RunConfig cfg = resolve_config(flags);
      if (!sweep.empty()) {
        const auto rows = cmd_sweep(eval_scene, parse_angles(sweep), csv.empty() ? "sweep.csv" : csv, cfg);
        std::cout << sweep_to_csv(rows);
        return 0;
      }
      if (eval_pred.empty()) throw ValidationError("eval needs --pred (or --sweep)");
      EvalOptions opts;
      opts.last_frame_only = last_only;
      opts.occluded_split = !no_occ;
      std::optional<TrajectorySpec> spec;
      if (!eval_traj.empty()) spec = load_trajectory(eval_traj, eval_index);
      const fs::path report = eval_report.empty() ? fs::path(eval_pred) / "report.json" : fs::path(eval_report);
      out = cmd_eval(eval_pred, eval_scene, spec, report, cfg, opts);
      out.erase("runs");
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
