// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "scene4d/camera.hpp"

namespace scene4d {

/// Caller-owned random stream. Every sampler takes one explicitly.
using Rng = std::mt19937_64;

inline constexpr int kClipFrames = 14;

struct SamplingBounds {
  std::string name;
  double azimuth_min_deg = 0.0;
  double azimuth_max_deg = 360.0;
  double elevation_min_deg = 0.0;
  double elevation_max_deg = 50.0;
  double radius_min_m = 12.0;
  double radius_max_m = 18.0;
  double max_d_azimuth_deg = 90.0;
  double max_d_elevation_deg = 30.0;
  double max_d_radius_m = 3.0;

  static SamplingBounds max90();
  static SamplingBounds max180();
  /// "max90" or "max180"; throws ValidationError otherwise.
  static SamplingBounds preset(const std::string& name);

  void validate() const;
  bool contains(const PoseDescription& p) const;
  bool delta_within(const PoseDelta& d) const;
};

enum class TrajectoryMode { Gradual, Direct, SineEased };

std::string to_string(TrajectoryMode m);
TrajectoryMode parse_trajectory_mode(const std::string& s);

struct CameraTrajectory {
  TrajectoryMode mode = TrajectoryMode::Gradual;
  std::vector<PoseDescription> poses;
  std::vector<Extrinsics> extrinsics;

  std::size_t size() const { return poses.size(); }
};

/// Pose t = interpolate_pose(src, dst, t / (T - 1)).
CameraTrajectory build_gradual(const PoseDescription& p_src, const PoseDescription& p_dst,
                               int t_frames);
/// Every frame pinned at p_dst.
CameraTrajectory build_direct(const PoseDescription& p_src, const PoseDescription& p_dst,
                              int t_frames);

struct EuclideanPose {
  Vec3 position = Vec3::Zero();
  Vec3 look_at = Vec3::UnitX();
};

/// Cosine ease (1 - cos(pi t / (T - 1))) / 2.
double sine_ease_alpha(int t, int t_frames);
/// Position and gaze target interpolated in Euclidean space with the cosine ease.
CameraTrajectory build_sine_eased(const EuclideanPose& src, const EuclideanPose& dst,
                                  int t_frames);

/// Forward-facing ego camera of the driving profile.
EuclideanPose driving_source_pose();
/// Elevated chase camera of the driving profile.
EuclideanPose driving_destination_pose();

/// Default look-at point of the object-centric profile (1 m above the ground center).
inline Vec3 default_look_at() { return {0.0, 0.0, 1.0}; }

/// Source pose: azimuth and radius uniform, elevation uniform in sin(theta) unless pinned.
PoseDescription sample_source_pose(Rng& rng, const SamplingBounds& bounds,
                                   std::optional<double> fixed_elevation_deg = std::nullopt);
/// Destination pose via capped deltas, rejection-sampled into the absolute ranges.
PoseDescription sample_destination_pose(Rng& rng, const PoseDescription& src,
                                        const SamplingBounds& bounds);
std::pair<PoseDescription, PoseDescription> sample_pose_pair(
    Rng& rng, const SamplingBounds& bounds,
    std::optional<double> fixed_source_elevation_deg = std::nullopt);

/// Starting elevation used for every evaluation trajectory.
inline constexpr double kEvaluationSourceElevationDeg = 5.0;

enum class ClipProfile { Kubric, Driving };

struct ClipSpec {
  int start_index = 0;
  int stride = 1;
  int count = kClipFrames;
  double fps_effective = 24.0;

  int frame_index(int t) const { return start_index + stride * t; }
  int last_frame() const { return frame_index(count - 1); }
};

std::vector<int> profile_strides(ClipProfile p);
double profile_base_fps(ClipProfile p);
/// Stride drawn uniformly among the profile strides that fit, start uniform over feasible starts.
ClipSpec sample_clip(Rng& rng, int total_frames, ClipProfile profile, int count = kClipFrames);

int motion_bucket(const PoseDelta& d, const SamplingBounds& bounds);

/// Serializable description of one trajectory.
struct TrajectorySpec {
  TrajectoryMode mode = TrajectoryMode::Gradual;
  int frames = kClipFrames;
  PoseDescription source;
  PoseDescription destination;
  std::string preset = "max90";
  std::uint64_t seed = 0;
  ClipSpec clip;

  CameraTrajectory build() const;
};

nlohmann::json pose_to_json(const PoseDescription& p);
PoseDescription pose_from_json(const nlohmann::json& j);
nlohmann::json trajectory_to_json(const TrajectorySpec& spec);
TrajectorySpec trajectory_from_json(const nlohmann::json& j);

}  // namespace scene4d
