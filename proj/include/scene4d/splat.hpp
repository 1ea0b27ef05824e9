// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// Z-buffered point splatting.
//
// Each point that survives near/far and frustum culling covers a square footprint of
// (2 r + 1)^2 pixels around the pixel containing its projection. A pixel's depth is the
// minimum z among the points covering it. Its color/label comes from one winner chosen
// among the points whose z lies within depth_epsilon (relative) of that minimum; the
// winner is the point with the lowest source view id, then the lowest z, then the
// lowest (x, y) world position, then the lowest index. The key depends only on point
// contents, so the output does not depend on point order.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scene4d/camera.hpp"
#include "scene4d/image.hpp"
#include "scene4d/pointcloud.hpp"
#include "scene4d/trajectory.hpp"

namespace scene4d {

inline constexpr int kDefaultWidth = 384;
inline constexpr int kDefaultHeight = 256;

struct RenderSettings {
  int splat_radius = 1;
  double near_clip = 0.05;
  double far_clip = 500.0;
  std::array<float, 3> background{0.0f, 0.0f, 0.0f};
  std::uint16_t void_label = kVoidLabel;
  double depth_epsilon = 1e-4;

  void validate() const;
};

struct RenderedFrame {
  ImageRGB image;
  std::optional<LabelMap> labels;
  DepthMap depth;
  BoolMap coverage;

  double coverage_fraction() const;
};

struct Camera {
  Intrinsics intrinsics;
  Extrinsics extrinsics;
};

RenderedFrame render_points(const FusedPointCloud& cloud, const Camera& camera,
                            const RenderSettings& settings = {});

/// Renders cloud[t] from trajectory pose t; frames run on up to `jobs` threads.
std::vector<RenderedFrame> render_trajectory(std::span<const FusedPointCloud> frames,
                                             const CameraTrajectory& traj,
                                             const Intrinsics& intrinsics,
                                             const RenderSettings& settings = {}, int jobs = 1);

enum class Modality { Rgb, Semantic };

Modality parse_modality(const std::string& s);
std::string to_string(Modality m);

struct BaselineOptions {
  /// Fuse every input frame up to t instead of only frame t.
  bool accumulate_history = false;
  int jobs = 1;
};

/// Geometric reprojection baseline: each timestamp's single input view is unprojected
/// with its ground-truth depth and rendered from the trajectory pose of that timestamp.
std::vector<RenderedFrame> reproject_baseline(std::span<const ViewFrame> input_views,
                                              const CameraTrajectory& traj,
                                              const Intrinsics& intrinsics,
                                              const RenderSettings& settings, Modality modality,
                                              const BaselineOptions& opts = {});

}  // namespace scene4d
