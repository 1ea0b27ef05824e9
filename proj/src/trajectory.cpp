// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene4d/trajectory.hpp"

#include <cmath>

#include "scene4d/errors.hpp"

namespace scene4d {

SamplingBounds SamplingBounds::max90() {
  SamplingBounds b;
  b.name = "max90";
  b.elevation_min_deg = 0.0;
  b.elevation_max_deg = 50.0;
  b.max_d_azimuth_deg = 90.0;
  b.max_d_elevation_deg = 30.0;
  b.max_d_radius_m = 3.0;
  return b;
}

SamplingBounds SamplingBounds::max180() {
  SamplingBounds b;
  b.name = "max180";
  b.elevation_min_deg = 0.0;
  b.elevation_max_deg = 90.0;
  b.max_d_azimuth_deg = 180.0;
  b.max_d_elevation_deg = 60.0;
  b.max_d_radius_m = 3.0;
  return b;
}

SamplingBounds SamplingBounds::preset(const std::string& name) {
  if (name == "max90") return max90();
  if (name == "max180") return max180();
  throw ValidationError("unknown bounds preset '" + name + "'");
}

void SamplingBounds::validate() const {
  if (!(elevation_min_deg <= elevation_max_deg) || elevation_min_deg < -90.0 ||
      elevation_max_deg > 90.0)
    throw ValidationError("bounds: invalid elevation range");
  if (!(radius_min_m > 0.0 && radius_min_m <= radius_max_m))
    throw ValidationError("bounds: invalid radius range");
  if (max_d_azimuth_deg < 0.0 || max_d_elevation_deg < 0.0 || max_d_radius_m < 0.0)
    throw ValidationError("bounds: negative delta cap");
}

bool SamplingBounds::contains(const PoseDescription& p) const {
  const double az = wrap_degrees_positive(p.azimuth_deg);
  return az >= azimuth_min_deg && az <= azimuth_max_deg && p.elevation_deg >= elevation_min_deg &&
         p.elevation_deg <= elevation_max_deg && p.radius_m >= radius_min_m &&
         p.radius_m <= radius_max_m;
}

bool SamplingBounds::delta_within(const PoseDelta& d) const {
  return std::abs(d.d_azimuth_deg) <= max_d_azimuth_deg &&
         std::abs(d.d_elevation_deg) <= max_d_elevation_deg &&
         std::abs(d.d_radius_m) <= max_d_radius_m;
}

std::string to_string(TrajectoryMode m) {
  switch (m) {
    case TrajectoryMode::Gradual: return "gradual";
    case TrajectoryMode::Direct: return "direct";
    case TrajectoryMode::SineEased: return "sine";
  }
  return "gradual";
}

TrajectoryMode parse_trajectory_mode(const std::string& s) {
  if (s == "gradual") return TrajectoryMode::Gradual;
  if (s == "direct") return TrajectoryMode::Direct;
  if (s == "sine" || s == "sine_eased") return TrajectoryMode::SineEased;
  throw ValidationError("unknown trajectory mode '" + s + "'");
}

namespace {

CameraTrajectory realize(TrajectoryMode mode, std::vector<PoseDescription> poses) {
  CameraTrajectory traj;
  traj.mode = mode;
  traj.extrinsics.reserve(poses.size());
  for (const auto& p : poses) traj.extrinsics.push_back(pose_to_extrinsics(p));
  traj.poses = std::move(poses);
  return traj;
}

}  // namespace

CameraTrajectory build_gradual(const PoseDescription& p_src, const PoseDescription& p_dst,
                               int t_frames) {
  if (t_frames < 2) throw ValidationError("gradual trajectory needs at least 2 frames");
  std::vector<PoseDescription> poses;
  poses.reserve(t_frames);
  for (int t = 0; t < t_frames; ++t) {
    const double alpha = (t == t_frames - 1) ? 1.0 : static_cast<double>(t) / (t_frames - 1);
    poses.push_back(interpolate_pose(p_src, p_dst, alpha));
  }
  return realize(TrajectoryMode::Gradual, std::move(poses));
}

CameraTrajectory build_direct(const PoseDescription& p_src, const PoseDescription& p_dst,
                              int t_frames) {
  (void)p_src;
  if (t_frames < 1) throw ValidationError("direct trajectory needs at least 1 frame");
  return realize(TrajectoryMode::Direct, std::vector<PoseDescription>(t_frames, p_dst));
}

double sine_ease_alpha(int t, int t_frames) {
  if (t_frames < 2) throw ValidationError("sine-eased trajectory needs at least 2 frames");
  if (t <= 0) return 0.0;
  if (t >= t_frames - 1) return 1.0;
  return (1.0 - std::cos(kPi * t / (t_frames - 1))) / 2.0;
}

CameraTrajectory build_sine_eased(const EuclideanPose& src, const EuclideanPose& dst,
                                  int t_frames) {
  if (t_frames < 2) throw ValidationError("sine-eased trajectory needs at least 2 frames");
  std::vector<PoseDescription> poses;
  poses.reserve(t_frames);
  for (int t = 0; t < t_frames; ++t) {
    const double a = sine_ease_alpha(t, t_frames);
    const Vec3 pos = (1.0 - a) * src.position + a * dst.position;
    const Vec3 gaze = (1.0 - a) * src.look_at + a * dst.look_at;
    poses.push_back(pose_from_position(pos, gaze));
  }
  return realize(TrajectoryMode::SineEased, std::move(poses));
}

EuclideanPose driving_source_pose() { return {{1.6, 0.0, 1.55}, {5.6, 0.0, 1.55}}; }
EuclideanPose driving_destination_pose() { return {{-8.0, 0.0, 8.0}, {5.6, 0.0, 1.55}}; }

PoseDescription sample_source_pose(Rng& rng, const SamplingBounds& bounds,
                                   std::optional<double> fixed_elevation_deg) {
  bounds.validate();
  std::uniform_real_distribution<double> az(bounds.azimuth_min_deg, bounds.azimuth_max_deg);
  std::uniform_real_distribution<double> sin_el(std::sin(deg2rad(bounds.elevation_min_deg)),
                                                std::sin(deg2rad(bounds.elevation_max_deg)));
  std::uniform_real_distribution<double> radius(bounds.radius_min_m, bounds.radius_max_m);
  PoseDescription p;
  p.azimuth_deg = wrap_degrees_positive(az(rng));
  const double s = sin_el(rng);
  p.elevation_deg = fixed_elevation_deg ? *fixed_elevation_deg : rad2deg(std::asin(s));
  p.radius_m = radius(rng);
  p.look_at = default_look_at();
  return p;
}

PoseDescription sample_destination_pose(Rng& rng, const PoseDescription& src,
                                        const SamplingBounds& bounds) {
  std::uniform_real_distribution<double> d_az(-bounds.max_d_azimuth_deg, bounds.max_d_azimuth_deg);
  std::uniform_real_distribution<double> d_el(-bounds.max_d_elevation_deg,
                                              bounds.max_d_elevation_deg);
  std::uniform_real_distribution<double> d_r(-bounds.max_d_radius_m, bounds.max_d_radius_m);
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    PoseDescription dst;
    dst.azimuth_deg = wrap_degrees_positive(src.azimuth_deg + d_az(rng));
    dst.elevation_deg = src.elevation_deg + d_el(rng);
    dst.radius_m = src.radius_m + d_r(rng);
    dst.look_at = src.look_at;
    if (bounds.contains(dst) && bounds.delta_within(pose_delta(src, dst))) return dst;
  }
  throw ValidationError("sample_destination_pose: feasible region is empty");
}

std::pair<PoseDescription, PoseDescription> sample_pose_pair(
    Rng& rng, const SamplingBounds& bounds, std::optional<double> fixed_source_elevation_deg) {
  PoseDescription src = sample_source_pose(rng, bounds, fixed_source_elevation_deg);
  PoseDescription dst = sample_destination_pose(rng, src, bounds);
  return {src, dst};
}

std::vector<int> profile_strides(ClipProfile p) {
  return p == ClipProfile::Kubric ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{1, 2};
}

double profile_base_fps(ClipProfile p) { return p == ClipProfile::Kubric ? 24.0 : 10.0; }

ClipSpec sample_clip(Rng& rng, int total_frames, ClipProfile profile, int count) {
  if (count < 1) throw ValidationError("sample_clip: count must be positive");
  std::vector<int> feasible;
  for (int s : profile_strides(profile))
    if (s * (count - 1) <= total_frames - 1) feasible.push_back(s);
  if (feasible.empty()) throw ValidationError("sample_clip: clip does not fit in the scene");
  std::uniform_int_distribution<std::size_t> pick(0, feasible.size() - 1);
  ClipSpec c;
  c.count = count;
  c.stride = feasible[pick(rng)];
  std::uniform_int_distribution<int> start(0, total_frames - 1 - c.stride * (count - 1));
  c.start_index = start(rng);
  c.fps_effective = profile_base_fps(profile) / c.stride;
  return c;
}

int motion_bucket(const PoseDelta& d, const SamplingBounds& bounds) {
  return motion_bucket(d.d_azimuth_deg, d.d_elevation_deg, bounds.max_d_azimuth_deg,
                       bounds.max_d_elevation_deg);
}

CameraTrajectory TrajectorySpec::build() const {
  switch (mode) {
    case TrajectoryMode::Gradual: return build_gradual(source, destination, frames);
    case TrajectoryMode::Direct: return build_direct(source, destination, frames);
    case TrajectoryMode::SineEased:
      return build_sine_eased({source.camera_center(), source.look_at},
                              {destination.camera_center(), destination.look_at}, frames);
  }
  throw ValidationError("unknown trajectory mode");
}

namespace {

Vec3 vec3_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw ValidationError("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

nlohmann::json pose_to_json(const PoseDescription& p) {
  return {{"azimuth_deg", p.azimuth_deg},
          {"elevation_deg", p.elevation_deg},
          {"radius_m", p.radius_m},
          {"look_at", {p.look_at.x(), p.look_at.y(), p.look_at.z()}}};
}

PoseDescription pose_from_json(const nlohmann::json& j) {
  try {
    PoseDescription p;
    const Vec3 look_at = j.contains("look_at") ? vec3_from_json(j.at("look_at")) : default_look_at();
    if (j.contains("position")) {
      p = pose_from_position(vec3_from_json(j.at("position")), look_at);
    } else {
      p.azimuth_deg = j.at("azimuth_deg").get<double>();
      p.elevation_deg = j.at("elevation_deg").get<double>();
      p.radius_m = j.at("radius_m").get<double>();
      p.look_at = look_at;
    }
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("pose json: ") + e.what());
  }
}

nlohmann::json trajectory_to_json(const TrajectorySpec& spec) {
  return {{"mode", to_string(spec.mode)},
          {"frames", spec.frames},
          {"source", pose_to_json(spec.source)},
          {"destination", pose_to_json(spec.destination)},
          {"preset", spec.preset},
          {"seed", spec.seed},
          {"clip",
           {{"start", spec.clip.start_index},
            {"stride", spec.clip.stride},
            {"fps", spec.clip.fps_effective}}}};
}

TrajectorySpec trajectory_from_json(const nlohmann::json& j) {
  try {
    TrajectorySpec s;
    s.mode = parse_trajectory_mode(j.value("mode", std::string("gradual")));
    s.frames = j.value("frames", kClipFrames);
    s.source = pose_from_json(j.at("source"));
    s.destination = pose_from_json(j.at("destination"));
    s.preset = j.value("preset", std::string("max90"));
    SamplingBounds::preset(s.preset);
    s.seed = j.value("seed", std::uint64_t{0});
    s.clip.count = s.frames;
    if (j.contains("clip")) {
      const auto& c = j.at("clip");
      s.clip.start_index = c.value("start", 0);
      s.clip.stride = c.value("stride", 1);
      s.clip.fps_effective = c.value("fps", 24.0);
    }
    if (s.frames < 1 || s.clip.stride < 1 || s.clip.start_index < 0)
      throw ValidationError("trajectory json: invalid frame/clip fields");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("trajectory json: ") + e.what());
  }
}

}  // namespace scene4d
