// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// Analytic multi-view RGB-D scenes: flat-shaded spheres in ballistic motion above a
// checkerboard ground square, ray traced exactly from a ring rig of cameras.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "scene4d/camera.hpp"
#include "scene4d/pointcloud.hpp"
#include "scene4d/trajectory.hpp"

namespace scene4d {

inline constexpr std::uint16_t kGroundLabel = 0;

struct Sphere {
  Vec3 center0 = Vec3::Zero();
  Vec3 velocity0 = Vec3::Zero();
  double radius = 1.0;
  std::array<float, 3> color{0.5f, 0.5f, 0.5f};
  std::uint16_t label = 1;
};

struct SceneSpec {
  std::vector<Sphere> spheres;
  double gravity = 9.81;
  double restitution = 0.6;
  double fps = 24.0;
  int frame_count = 60;
  /// The ground is the square |x|, |y| <= ground_half_extent on z = 0.
  double ground_half_extent = 50.0;
  /// Squares stay at least two pixels wide out to the ground edge at the default rig and resolution.
  double checker_size = 4.0;
  std::array<float, 3> checker_light{0.62f, 0.60f, 0.56f};
  std::array<float, 3> checker_dark{0.46f, 0.45f, 0.42f};

  /// Spawn box, radius range, restitution and frame count checks.
  void validate() const;
};

struct SphereState {
  Vec3 center;
  double radius;
  std::array<float, 3> color;
  std::uint16_t label;
};

/// Closed-form state at frame `t` (time t / fps).
std::vector<SphereState> simulate(const SceneSpec& spec, int t);
/// Closed-form center height for a sphere dropped or thrown vertically, with bounces.
double ballistic_height(double z0, double vz0, double radius, double gravity, double restitution,
                        double tau);

struct CameraRig {
  std::vector<PoseDescription> cameras;
  Intrinsics intrinsics;
};

/// `n` cameras split evenly over the elevation rings, evenly spaced in azimuth per ring,
/// all at `radius` from (0, 0, 1).
CameraRig make_rig(int n, double radius, const std::vector<double>& elevations_deg, int width = 384,
                   int height = 256, double horizontal_fov_deg = 53.1);
/// 16 cameras, radius 15, rings at 10 and 35 degrees.
CameraRig default_rig(int width = 384, int height = 256);

struct RayHit {
  double t = 0.0;  // ray parameter; equals camera-frame z for camera rays with unit forward component
  std::array<float, 3> color{};
  std::uint16_t label = 0;
  int primitive = -1;  // sphere index, or -2 for the ground
};

/// Nearest intersection of origin + t * dir (t > t_min) with the scene.
std::optional<RayHit> trace_ray(const std::vector<SphereState>& state, const SceneSpec& spec,
                                const Vec3& origin, const Vec3& dir, double t_min = 0.0);

/// Exact per-pixel ray casting through pixel centers. Misses get depth 0 and the void label.
ViewFrame render_analytic(const std::vector<SphereState>& state, const SceneSpec& spec,
                          const Extrinsics& camera, const Intrinsics& intrinsics, int timestamp = 0);

struct SceneGenOptions {
  int min_spheres = 7;
  int max_spheres = 22;
  double min_radius = 0.5;
  double max_radius = 1.5;
  double mid_air_fraction = 1.0 / 3.0;
  double max_horizontal_speed = 1.0;
  int frame_count = 60;
  double fps = 24.0;
  /// Sphere labels are drawn from these ids.
  std::vector<std::uint16_t> labels{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
};

SceneSpec generate_scene(Rng& rng, const SceneGenOptions& opts = {});

nlohmann::json scene_spec_to_json(const SceneSpec& spec);
SceneSpec scene_spec_from_json(const nlohmann::json& j);

/// Unsigned distance to the nearest analytic surface (spheres and ground square).
double scene_surface_distance(const std::vector<SphereState>& state, const SceneSpec& spec,
                             const Vec3& p);

}  // namespace scene4d
