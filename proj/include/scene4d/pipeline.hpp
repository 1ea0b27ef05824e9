// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// Dataset-level commands: synth -> fuse -> render / baseline -> eval.
//
// Render and baseline runs are directories holding
//   rgb/frame_%04d.png, depth/frame_%04d.pfm, coverage/frame_%04d.png (1-bit),
//   semantic/frame_%04d.png (when labels exist), trajectory.json, conditioning.json.
// Evaluation discovers run directories by their trajectory.json.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scene4d/dataset.hpp"
#include "scene4d/metrics.hpp"
#include "scene4d/splat.hpp"
#include "scene4d/trajectory.hpp"

namespace scene4d {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::uint64_t seed = 0;
  std::string preset = "max90";
  TrajectoryMode mode = TrajectoryMode::Gradual;
  int frames = kClipFrames;
  int width = kDefaultWidth;
  int height = kDefaultHeight;
  /// Unset: 1 for rendering fused clouds, 0 for single-view reprojection.
  std::optional<int> splat_radius;
  double far_plane = 500.0;
  Modality modality = Modality::Rgb;
  int samples_per_trajectory = 4;
  int trajectories_per_scene = 4;
  int jobs = 1;
  bool write_masks = true;
  MiouMode miou_mode = MiouMode::Accumulate;

  // Dataset generation.
  int scene_count = 1;
  int scene_frames = 60;
  int camera_count = 16;
  double rig_radius = 15.0;
  std::vector<double> ring_elevations{10.0, 35.0};
  int min_spheres = 7;
  int max_spheres = 22;

  void validate() const;
  RenderSettings render_settings(int default_radius) const;
};

nlohmann::json run_config_to_json(const RunConfig& c);
/// Fields present in `j` override `base`; unknown keys are rejected.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});
std::string config_hash(const RunConfig& c);
nlohmann::json provenance_block(const RunConfig& c, const std::string& command);

/// Parses "WxH".
std::pair<int, int> parse_resolution(const std::string& s);
/// Intrinsics rescaled to a new resolution (same field of view).
Intrinsics rescale_intrinsics(const Intrinsics& k, int width, int height);

/// Writes scene_XXXX/ directories, categories.json, trajectories.json and config.json.
nlohmann::json cmd_synth(const std::filesystem::path& out_dir, const RunConfig& cfg);

/// One fused cloud per frame: <out>/frame_%04d.bin + .json. `out_dir` defaults to <scene>/fused.
nlohmann::json cmd_fuse(const std::filesystem::path& scene_dir, const RunConfig& cfg,
                        std::optional<std::filesystem::path> out_dir = std::nullopt);

/// Loads <scene>/fused if present, otherwise fuses the raw views of the needed frames.
nlohmann::json cmd_render(const std::filesystem::path& scene_dir, const TrajectorySpec& traj,
                          const std::filesystem::path& out_dir, const RunConfig& cfg);

/// Ground truth along a trajectory for a generated scene.
struct GroundTruth {
  VideoClip target;
  std::vector<DepthMap> target_depth;
  std::vector<DepthMap> source_depth;
  std::vector<OcclusionMask> masks;
};
GroundTruth render_ground_truth(const SceneSpec& scene, const TrajectorySpec& spec,
                                const Intrinsics& k, int jobs = 1);

/// Evaluates one run directory, or every run below a directory, and writes the report.
/// `traj` overrides the runs' own trajectory.json.
nlohmann::json cmd_eval(const std::filesystem::path& pred_dir, const std::filesystem::path& scene_dir,
                        const std::optional<TrajectorySpec>& traj,
                        const std::filesystem::path& report_path, const RunConfig& cfg,
                        EvalOptions opts = {});

/// Reprojection baseline followed by evaluation on the "all" split.
nlohmann::json cmd_baseline(const std::filesystem::path& scene_dir, const TrajectorySpec& traj,
                            const std::filesystem::path& out_dir, const RunConfig& cfg);

/// Final-frame PSNR of the reprojection baseline rotating azimuth by `angle_deg` from a
/// source at azimuth 0, elevation 10, radius 15; over pixels with ground truth.
double baseline_final_frame_psnr(const SceneSpec& scene, double angle_deg, const RunConfig& cfg);

/// Sweep over the generated scenes found below `dataset_dir`; writes the CSV.
std::vector<SweepRow> cmd_sweep(const std::filesystem::path& dataset_dir,
                                const std::vector<double>& angles_deg,
                                const std::filesystem::path& csv_path, const RunConfig& cfg);

/// Comma-separated degrees, or "a:b:step".
std::vector<double> parse_angles(const std::string& s);

}  // namespace scene4d
