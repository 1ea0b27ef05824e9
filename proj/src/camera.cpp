// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene4d/camera.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scene4d/errors.hpp"

namespace scene4d {

double wrap_degrees_signed(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r <= -180.0) r += 360.0;
  if (r > 180.0) r -= 360.0;
  return r;
}

double wrap_degrees_positive(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

void Intrinsics::validate() const {
  if (width <= 0 || height <= 0) throw ValidationError("intrinsics: non-positive image size");
  if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy))
    throw ValidationError("intrinsics: focal lengths must be positive");
  if (!(cx > 0.0 && cx < width) || !(cy > 0.0 && cy < height))
    throw ValidationError("intrinsics: principal point outside the image");
}

Intrinsics intrinsics_from_fov(int width, int height, double horizontal_fov_deg) {
  if (!(horizontal_fov_deg > 0.0 && horizontal_fov_deg < 180.0))
    throw ValidationError("field of view must lie in (0, 180) degrees");
  Intrinsics k;
  k.width = width;
  k.height = height;
  k.fx = k.fy = (width / 2.0) / std::tan(deg2rad(horizontal_fov_deg) / 2.0);
  k.cx = width / 2.0;
  k.cy = height / 2.0;
  k.validate();
  return k;
}

double orthonormality_error(const Mat3& r) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
}

bool is_rigid(const Mat4& m, double tol) {
  if (!m.allFinite()) return false;
  if (m(3, 0) != 0.0 || m(3, 1) != 0.0 || m(3, 2) != 0.0 || m(3, 3) != 1.0) return false;
  const Mat3 r = m.topLeftCorner<3, 3>();
  return orthonormality_error(r) <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

Extrinsics Extrinsics::from_matrix(const Mat4& m) {
  if (!is_rigid(m)) throw ValidationError("extrinsics: matrix is not a rigid transform");
  return Extrinsics(m);
}

Extrinsics Extrinsics::from_rotation_translation(const Mat3& r, const Vec3& t) {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = r;
  m.topRightCorner<3, 1>() = t;
  return from_matrix(m);
}

Extrinsics Extrinsics::inverse() const {
  const Mat3 rt = rotation().transpose();
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = rt;
  m.topRightCorner<3, 1>() = -rt * translation();
  return Extrinsics(m);
}

Extrinsics Extrinsics::operator*(const Extrinsics& o) const {
  Mat4 m = m_ * o.m_;
  m.row(3) << 0.0, 0.0, 0.0, 1.0;
  return Extrinsics(m);
}

void PoseDescription::validate() const {
  if (!std::isfinite(azimuth_deg) || !std::isfinite(elevation_deg) || !std::isfinite(radius_m) ||
      !look_at.allFinite())
    throw ValidationError("pose: non-finite component");
  if (!(radius_m > 0.0)) throw ValidationError("pose: radius must be positive");
  if (elevation_deg < -90.0 || elevation_deg > 90.0)
    throw ValidationError("pose: elevation outside [-90, 90]");
}

Vec3 PoseDescription::camera_center() const {
  const double az = deg2rad(azimuth_deg);
  const double el = deg2rad(elevation_deg);
  return look_at + radius_m * Vec3(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az),
                                   std::sin(el));
}

PoseDescription pose_from_position(const Vec3& camera_center, const Vec3& look_at) {
  const Vec3 d = camera_center - look_at;
  const double r = d.norm();
  if (!(r > 0.0)) throw ValidationError("pose: camera coincides with its look-at point");
  PoseDescription p;
  p.radius_m = r;
  p.elevation_deg = rad2deg(std::asin(std::clamp(d.z() / r, -1.0, 1.0)));
  p.azimuth_deg = wrap_degrees_positive(rad2deg(std::atan2(d.y(), d.x())));
  p.look_at = look_at;
  return p;
}

PoseDelta pose_delta(const PoseDescription& from, const PoseDescription& to) {
  return {wrap_degrees_signed(to.azimuth_deg - from.azimuth_deg),
          to.elevation_deg - from.elevation_deg, to.radius_m - from.radius_m};
}

Extrinsics pose_to_extrinsics(const PoseDescription& p) {
  p.validate();
  const Vec3 center = p.camera_center();
  const Vec3 gaze = p.look_at - center;
  const double gaze_norm = gaze.norm();
  if (!(gaze_norm > 0.0)) throw ValidationError("pose: degenerate gaze direction");
  const Vec3 forward = gaze / gaze_norm;

  Vec3 right = forward.cross(Vec3::UnitZ());
  if (right.norm() < 1e-12) {
    right = Vec3::UnitX() - Vec3::UnitX().dot(forward) * forward;
  }
  right.normalize();
  const Vec3 up = right.cross(forward);

  Mat3 r;
  r.col(0) = right;
  r.col(1) = -up;
  r.col(2) = forward;
  return Extrinsics::from_rotation_translation(r, center);
}

Extrinsics relative_extrinsics(const Extrinsics& e_src, const Extrinsics& e_dst) {
  return e_src.inverse() * e_dst;
}

RelativeTransform relative_transform(const PoseDescription& src, const PoseDescription& dst) {
  RelativeTransform rel;
  rel.matrix = relative_extrinsics(pose_to_extrinsics(src), pose_to_extrinsics(dst)).matrix();
  rel.params = pose_delta(src, dst);
  return rel;
}

PoseDescription interpolate_pose(const PoseDescription& p1, const PoseDescription& p2,
                                 double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("interpolate_pose: alpha outside [0, 1]");
  if (alpha == 0.0) return p1;
  if (alpha == 1.0) return p2;
  PoseDescription out;
  out.azimuth_deg = p1.azimuth_deg + alpha * wrap_degrees_signed(p2.azimuth_deg - p1.azimuth_deg);
  out.elevation_deg = p1.elevation_deg + alpha * (p2.elevation_deg - p1.elevation_deg);
  out.radius_m = p1.radius_m + alpha * (p2.radius_m - p1.radius_m);
  out.look_at = p1.look_at + alpha * (p2.look_at - p1.look_at);
  return out;
}

Projection project(const Intrinsics& k, const Vec3& point_cam, double near_clip) {
  const double z = point_cam.z();
  if (!(z > near_clip)) throw ValidationError("project: point is behind the near clip plane");
  return {k.fx * point_cam.x() / z + k.cx, k.fy * point_cam.y() / z + k.cy, z};
}

Vec3 unproject_pixel(const Intrinsics& k, double u, double v, double depth) {
  if (!(depth > 0.0)) throw ValidationError("unproject_pixel: depth must be positive");
  return {(u - k.cx) / k.fx * depth, (v - k.cy) / k.fy * depth, depth};
}

int motion_bucket(double d_azimuth_deg, double d_elevation_deg, double max_d_azimuth_deg,
                  double max_d_elevation_deg) {
  const double max_sq = max_d_azimuth_deg * max_d_azimuth_deg +
                        max_d_elevation_deg * max_d_elevation_deg;
  if (!(max_sq > 0.0)) throw ValidationError("motion_bucket: bounds must be non-zero");
  const double ratio =
      std::sqrt((d_azimuth_deg * d_azimuth_deg + d_elevation_deg * d_elevation_deg) / max_sq);
  const long v = std::lround(255.0 * ratio);
  return static_cast<int>(std::clamp(v, 0L, 255L));
}

}  // namespace scene4d
