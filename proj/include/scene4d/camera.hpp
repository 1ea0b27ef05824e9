// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// Pinhole cameras and rigid pose algebra.
//
// Conventions:
//   world frame   right-handed, Z up; azimuth measured in the XY-plane from +X toward +Y,
//                 elevation measured up from the XY-plane.
//   camera frame  +X right, +Y down, +Z forward.
//   Extrinsics    camera-to-world. Depths are z-depths along the camera's forward axis.

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace scene4d {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kPi = 3.14159265358979323846;
inline double deg2rad(double d) { return d * (kPi / 180.0); }
inline double rad2deg(double r) { return r * (180.0 / kPi); }

/// Wraps an angle into (-180, 180].
double wrap_degrees_signed(double deg);
/// Wraps an angle into [0, 360).
double wrap_degrees_positive(double deg);

struct Intrinsics {
  int width = 0;
  int height = 0;
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  /// Throws ValidationError when any invariant is violated.
  void validate() const;
  bool operator==(const Intrinsics&) const = default;
};

/// Square-pixel intrinsics with the principal point at the image center.
Intrinsics intrinsics_from_fov(int width, int height, double horizontal_fov_deg);

/// Largest absolute deviation of R^T R from identity.
double orthonormality_error(const Mat3& r);
/// True when `m` is a rigid transform within `tol` and its bottom row is exactly (0,0,0,1).
bool is_rigid(const Mat4& m, double tol = 1e-9);

/// Camera-to-world rigid transform.
class Extrinsics {
 public:
  Extrinsics() : m_(Mat4::Identity()) {}

  /// Validates rigidity; throws ValidationError otherwise.
  static Extrinsics from_matrix(const Mat4& m);
  static Extrinsics from_rotation_translation(const Mat3& r, const Vec3& t);

  const Mat4& matrix() const { return m_; }
  Mat3 rotation() const { return m_.topLeftCorner<3, 3>(); }
  Vec3 translation() const { return m_.topRightCorner<3, 1>(); }
  /// Camera center in world coordinates.
  Vec3 center() const { return translation(); }
  Vec3 forward() const { return m_.block<3, 1>(0, 2); }

  /// Closed-form rigid inverse (R^T, -R^T t).
  Extrinsics inverse() const;
  Extrinsics operator*(const Extrinsics& o) const;

  Vec3 camera_to_world(const Vec3& p) const { return rotation() * p + translation(); }
  Vec3 world_to_camera(const Vec3& p) const { return rotation().transpose() * (p - translation()); }

  bool operator==(const Extrinsics& o) const { return m_ == o.m_; }

 private:
  explicit Extrinsics(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

/// Spherical camera pose around a look-at point.
struct PoseDescription {
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;
  double radius_m = 1.0;
  Vec3 look_at = Vec3::Zero();

  void validate() const;
  /// look_at + r (cos e cos a, cos e sin a, sin e).
  Vec3 camera_center() const;
  bool operator==(const PoseDescription& o) const {
    return azimuth_deg == o.azimuth_deg && elevation_deg == o.elevation_deg &&
           radius_m == o.radius_m && look_at == o.look_at;
  }
};

/// Inverse of PoseDescription::camera_center for a given look-at point.
PoseDescription pose_from_position(const Vec3& camera_center, const Vec3& look_at);

/// (Δφ, Δθ, Δr) between two pose descriptions; Δφ is wrapped to (-180, 180].
struct PoseDelta {
  double d_azimuth_deg = 0.0;
  double d_elevation_deg = 0.0;
  double d_radius_m = 0.0;
};

PoseDelta pose_delta(const PoseDescription& from, const PoseDescription& to);

struct RelativeTransform {
  Mat4 matrix = Mat4::Identity();
  PoseDelta params;
};

/// Realizes a pose description as a camera-to-world transform. At the zenith or
/// nadir the right axis falls back to world +X.
Extrinsics pose_to_extrinsics(const PoseDescription& p);

/// e_src^-1 * e_dst: the destination camera expressed in the source camera frame.
Extrinsics relative_extrinsics(const Extrinsics& e_src, const Extrinsics& e_dst);
RelativeTransform relative_transform(const PoseDescription& src, const PoseDescription& dst);

/// Convex combination; alpha = 0 yields p1, alpha = 1 yields p2. Azimuth follows the
/// shortest signed arc (+180 at the antipode).
PoseDescription interpolate_pose(const PoseDescription& p1, const PoseDescription& p2, double alpha);

struct Projection {
  double u = 0.0;
  double v = 0.0;
  double z = 0.0;
};

/// Projects a camera-frame point. Throws ValidationError when z <= near_clip.
Projection project(const Intrinsics& k, const Vec3& point_cam, double near_clip = 0.0);
/// Lifts a (continuous) pixel coordinate with z-depth into the camera frame. Integer
/// pixel (i, j) has its center at (i + 0.5, j + 0.5).
Vec3 unproject_pixel(const Intrinsics& k, double u, double v, double depth);

/// Conditioning value in [0, 255] proportional to ‖(Δφ, Δθ)‖ relative to the bound norm.
int motion_bucket(double d_azimuth_deg, double d_elevation_deg, double max_d_azimuth_deg,
                  double max_d_elevation_deg);

}  // namespace scene4d
