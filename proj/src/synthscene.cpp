// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene4d/synthscene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scene4d {

void SceneSpec::validate() const {
  if (!(gravity > 0.0)) throw ValidationError("scene: gravity must be positive");
  if (!(restitution >= 0.0 && restitution < 1.0)) throw ValidationError("scene: restitution must be in [0, 1)");
  if (!(fps > 0.0) || frame_count < 1) throw ValidationError("scene: invalid fps or frame count");
  if (!(ground_half_extent > 0.0) || !(checker_size > 0.0)) throw ValidationError("scene: invalid ground");
  for (const auto& s : spheres) {
    if (!(s.radius >= 0.5 && s.radius <= 1.5)) throw ValidationError("scene: sphere radius outside [0.5, 1.5]");
    const Vec3& c = s.center0;
    if (std::abs(c.x()) > 7.0 || std::abs(c.y()) > 7.0 || c.z() < s.radius || c.z() > 7.0)
      throw ValidationError("scene: sphere spawned outside the spawn box");
  }
}

double ballistic_height(double z0, double vz0, double radius, double gravity, double restitution,
                        double tau) {
  double h = z0 - radius;  // clearance above the ground
  double v = vz0;
  double base = z0;        // center height at the start of the current flight
  for (int bounce = 0; bounce < 10000; ++bounce) {
    const double disc = v * v + 2.0 * gravity * h;
    const double t_hit = (v + std::sqrt(disc)) / gravity;
    if (tau < t_hit) return base + v * tau - 0.5 * gravity * tau * tau;
    tau -= t_hit;
    v = restitution * std::sqrt(disc);
    h = 0.0;
    base = radius;
    if (v < 1e-9) break;
  }
  return radius;
}

std::vector<SphereState> simulate(const SceneSpec& spec, int t) {
  if (t < 0 || t >= spec.frame_count) throw ValidationError("simulate: frame index out of range");
  const double tau = t / spec.fps;
  std::vector<SphereState> out;
  out.reserve(spec.spheres.size());
  for (const auto& s : spec.spheres) {
    SphereState st;
    st.center = Vec3(s.center0.x() + s.velocity0.x() * tau, s.center0.y() + s.velocity0.y() * tau,
                     ballistic_height(s.center0.z(), s.velocity0.z(), s.radius, spec.gravity,
                                      spec.restitution, tau));
    st.radius = s.radius;
    st.color = s.color;
    st.label = s.label;
    out.push_back(st);
  }
  return out;
}

CameraRig make_rig(int n, double radius, const std::vector<double>& elevations_deg, int width,
                   int height, double horizontal_fov_deg) {
  if (n < 1) throw ValidationError("make_rig: need at least one camera");
  if (elevations_deg.empty()) throw ValidationError("make_rig: need at least one elevation ring");
  CameraRig rig;
  rig.intrinsics = intrinsics_from_fov(width, height, horizontal_fov_deg);
  const int rings = static_cast<int>(elevations_deg.size());
  for (int ring = 0; ring < rings; ++ring) {
    const int count = n / rings + (ring < n % rings ? 1 : 0);
    if (count == 0) continue;
    const double spacing = 360.0 / count;
    const double offset = (ring % 2 == 1) ? spacing / 2.0 : 0.0;
    for (int i = 0; i < count; ++i) {
      PoseDescription p;
      p.azimuth_deg = offset + spacing * i;
      p.elevation_deg = elevations_deg[ring];
      p.radius_m = radius;
      p.look_at = default_look_at();
      p.validate();
      rig.cameras.push_back(p);
    }
  }
  return rig;
}

CameraRig default_rig(int width, int height) { return make_rig(16, 15.0, {10.0, 35.0}, width, height); }

namespace {

// Smallest root of |o + t d - c|^2 = r^2 above t_min.
std::optional<double> ray_sphere(const Vec3& o, const Vec3& d, const Vec3& c, double r, double t_min) {
  const Vec3 oc = o - c;
  const double a = d.squaredNorm();
  const double half_b = d.dot(oc);
  const double cc = oc.squaredNorm() - r * r;
  const double disc = half_b * half_b - a * cc;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  // Numerically stable pair of roots.
  const double q = -(half_b + std::copysign(sq, half_b));
  double t0 = q / a, t1 = (q != 0.0) ? cc / q : t0;
  if (t0 > t1) std::swap(t0, t1);
  if (t0 > t_min) return t0;
  if (t1 > t_min) return t1;
  return std::nullopt;
}

std::array<float, 3> checker(const SceneSpec& spec, double x, double y) {
  const long ix = static_cast<long>(std::floor(x / spec.checker_size));
  const long iy = static_cast<long>(std::floor(y / spec.checker_size));
  return ((ix + iy) & 1) == 0 ? spec.checker_light : spec.checker_dark;
}

}  // namespace

std::optional<RayHit> trace_ray(const std::vector<SphereState>& state, const SceneSpec& spec,
                                const Vec3& origin, const Vec3& dir, double t_min) {
  std::optional<RayHit> best;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto t = ray_sphere(origin, dir, state[i].center, state[i].radius, t_min);
    if (t && (!best || *t < best->t)) best = RayHit{*t, state[i].color, state[i].label, static_cast<int>(i)};
  }
  if (dir.z() != 0.0) {
    const double t = -origin.z() / dir.z();
    if (t > t_min && (!best || t < best->t)) {
      const double x = origin.x() + t * dir.x();
      const double y = origin.y() + t * dir.y();
      if (std::abs(x) <= spec.ground_half_extent && std::abs(y) <= spec.ground_half_extent)
        best = RayHit{t, checker(spec, x, y), kGroundLabel, -2};
    }
  }
  return best;
}

ViewFrame render_analytic(const std::vector<SphereState>& state, const SceneSpec& spec,
                          const Extrinsics& camera, const Intrinsics& k, int timestamp) {
  k.validate();
  ViewFrame view;
  view.intrinsics = k;
  view.extrinsics = camera;
  view.timestamp = timestamp;
  view.rgb = make_rgb(k.width, k.height);
  view.depth = make_depth(k.width, k.height);
  view.semantic = make_labels(k.width, k.height, kVoidLabel);
  const Mat3 r = camera.rotation();
  const Vec3 origin = camera.center();
  for (int y = 0; y < k.height; ++y) {
    for (int x = 0; x < k.width; ++x) {
      // Camera-frame direction with unit forward component, so the ray parameter is z-depth.
      const Vec3 d_cam((x + 0.5 - k.cx) / k.fx, (y + 0.5 - k.cy) / k.fy, 1.0);
      const auto hit = trace_ray(state, spec, origin, r * d_cam);
      if (!hit) continue;
      view.depth.at(x, y) = hit->t;
      for (int c = 0; c < 3; ++c) view.rgb.at(x, y, c) = hit->color[c];
      view.semantic->at(x, y) = hit->label;
    }
  }
  return view;
}

SceneSpec generate_scene(Rng& rng, const SceneGenOptions& opts) {
  if (opts.min_spheres < 0 || opts.min_spheres > opts.max_spheres)
    throw ValidationError("generate_scene: invalid sphere count range");
  if (opts.labels.empty()) throw ValidationError("generate_scene: empty label set");
  SceneSpec spec;
  spec.fps = opts.fps;
  spec.frame_count = opts.frame_count;
  std::uniform_int_distribution<int> count(opts.min_spheres, opts.max_spheres);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> xy(-7.0, 7.0);
  std::uniform_real_distribution<double> radius(opts.min_radius, opts.max_radius);
  std::uniform_real_distribution<double> hspeed(-opts.max_horizontal_speed, opts.max_horizontal_speed);
  std::uniform_real_distribution<double> channel(0.08, 0.95);
  std::uniform_int_distribution<std::size_t> label(0, opts.labels.size() - 1);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Sphere s;
    s.radius = radius(rng);
    const bool mid_air = unit(rng) < opts.mid_air_fraction;
    const double z = mid_air ? s.radius + (7.0 - s.radius) * (0.3 + 0.7 * unit(rng)) : s.radius;
    s.center0 = Vec3(xy(rng), xy(rng), z);
    s.velocity0 = Vec3(hspeed(rng), hspeed(rng), mid_air ? 2.0 * (unit(rng) - 0.25) : 0.0);
    s.color = {static_cast<float>(channel(rng)), static_cast<float>(channel(rng)),
               static_cast<float>(channel(rng))};
    s.label = opts.labels[label(rng)];
    spec.spheres.push_back(s);
  }
  spec.validate();
  return spec;
}

namespace {

nlohmann::json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
Vec3 vec_from(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }
std::array<float, 3> color_from(const nlohmann::json& j) {
  return {j.at(0).get<float>(), j.at(1).get<float>(), j.at(2).get<float>()};
}

}  // namespace

nlohmann::json scene_spec_to_json(const SceneSpec& spec) {
  nlohmann::json spheres = nlohmann::json::array();
  for (const auto& s : spec.spheres)
    spheres.push_back({{"center0", vec_json(s.center0)},
                       {"velocity0", vec_json(s.velocity0)},
                       {"radius", s.radius},
                       {"color", {s.color[0], s.color[1], s.color[2]}},
                       {"label", s.label}});
  return {{"spheres", spheres},
          {"gravity", spec.gravity},
          {"restitution", spec.restitution},
          {"fps", spec.fps},
          {"frame_count", spec.frame_count},
          {"ground_half_extent", spec.ground_half_extent},
          {"checker_size", spec.checker_size},
          {"checker_light", {spec.checker_light[0], spec.checker_light[1], spec.checker_light[2]}},
          {"checker_dark", {spec.checker_dark[0], spec.checker_dark[1], spec.checker_dark[2]}}};
}

SceneSpec scene_spec_from_json(const nlohmann::json& j) {
  try {
    SceneSpec spec;
    for (const auto& s : j.at("spheres")) {
      Sphere sp;
      sp.center0 = vec_from(s.at("center0"));
      sp.velocity0 = vec_from(s.at("velocity0"));
      sp.radius = s.at("radius").get<double>();
      sp.color = color_from(s.at("color"));
      sp.label = s.at("label").get<std::uint16_t>();
      spec.spheres.push_back(sp);
    }
    spec.gravity = j.value("gravity", spec.gravity);
    spec.restitution = j.value("restitution", spec.restitution);
    spec.fps = j.value("fps", spec.fps);
    spec.frame_count = j.value("frame_count", spec.frame_count);
    spec.ground_half_extent = j.value("ground_half_extent", spec.ground_half_extent);
    spec.checker_size = j.value("checker_size", spec.checker_size);
    if (j.contains("checker_light")) spec.checker_light = color_from(j.at("checker_light"));
    if (j.contains("checker_dark")) spec.checker_dark = color_from(j.at("checker_dark"));
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("scene spec json: ") + e.what());
  }
}

double scene_surface_distance(const std::vector<SphereState>& state, const SceneSpec& spec,
                              const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : state) best = std::min(best, std::abs((p - s.center).norm() - s.radius));
  const double e = spec.ground_half_extent;
  const double dx = std::max(std::abs(p.x()) - e, 0.0);
  const double dy = std::max(std::abs(p.y()) - e, 0.0);
  best = std::min(best, std::sqrt(dx * dx + dy * dy + p.z() * p.z()));
  return best;
}

}  // namespace scene4d
