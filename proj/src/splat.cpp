// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene4d/splat.hpp"

#include <cmath>
#include <limits>
#include <tuple>

#include "scene4d/parallel.hpp"

namespace scene4d {

void RenderSettings::validate() const {
  if (splat_radius < 0 || splat_radius > 8) throw ValidationError("render: splat radius must be in [0, 8]");
  if (!(near_clip >= 0.0 && near_clip < far_clip)) throw ValidationError("render: need 0 <= near_clip < far_clip");
  if (!(depth_epsilon >= 0.0)) throw ValidationError("render: depth_epsilon must be >= 0");
}

double RenderedFrame::coverage_fraction() const {
  if (coverage.data.empty()) return 0.0;
  std::size_t n = 0;
  for (auto c : coverage.data) n += c ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(coverage.data.size());
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Projected {
  std::uint32_t index;
  int x;
  int y;
  double z;
};

}  // namespace

RenderedFrame render_points(const FusedPointCloud& cloud, const Camera& camera,
                            const RenderSettings& settings) {
  settings.validate();
  cloud.validate();
  const Intrinsics& k = camera.intrinsics;
  k.validate();
  const int w = k.width, h = k.height, r = settings.splat_radius;

  // World-to-camera, applied in double precision.
  const Mat3 rt = camera.extrinsics.rotation().transpose();
  const Vec3 t = camera.extrinsics.translation();

  std::vector<Projected> visible;
  visible.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3 p = rt * (cloud.positions[i] - t);
    const double z = p.z();
    if (!(z >= settings.near_clip && z <= settings.far_clip)) continue;
    const double u = k.fx * p.x() / z + k.cx;
    const double v = k.fy * p.y() / z + k.cy;
    if (!(u >= 0.0 && u < w && v >= 0.0 && v < h)) continue;
    visible.push_back({static_cast<std::uint32_t>(i), static_cast<int>(std::floor(u)),
                       static_cast<int>(std::floor(v)), z});
  }

  RenderedFrame out;
  out.depth = make_depth(w, h);
  out.coverage = BoolMap(w, h, 1, 0);

  // Pass 1: per-pixel minimum depth.
  std::vector<double> zmin(static_cast<std::size_t>(w) * h, std::numeric_limits<double>::infinity());
  for (const auto& p : visible) {
    const int x0 = std::max(p.x - r, 0), x1 = std::min(p.x + r, w - 1);
    const int y0 = std::max(p.y - r, 0), y1 = std::min(p.y + r, h - 1);
    for (int y = y0; y <= y1; ++y) {
      double* row = zmin.data() + static_cast<std::size_t>(y) * w;
      for (int x = x0; x <= x1; ++x) row[x] = std::min(row[x], p.z);
    }
  }

  // Pass 2: among near-minimum candidates, the smallest content key wins.
  const double tie_scale = 1.0 + settings.depth_epsilon;
  auto key = [&](const Projected& p) {
    const Vec3& pos = cloud.positions[p.index];
    return std::make_tuple(cloud.source_view[p.index], p.z, pos.x(), pos.y(), p.index);
  };
  std::vector<std::uint32_t> winner(zmin.size(), kNone);
  std::vector<double> winner_z(zmin.size(), 0.0);
  for (std::size_t vi = 0; vi < visible.size(); ++vi) {
    const auto& p = visible[vi];
    const int x0 = std::max(p.x - r, 0), x1 = std::min(p.x + r, w - 1);
    const int y0 = std::max(p.y - r, 0), y1 = std::min(p.y + r, h - 1);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const std::size_t pix = static_cast<std::size_t>(y) * w + x;
        if (!(p.z <= zmin[pix] * tie_scale)) continue;
        const std::uint32_t cur = winner[pix];
        if (cur != kNone) {
          const Projected current{cur, 0, 0, winner_z[pix]};
          if (!(key(p) < key(current))) continue;
        }
        winner[pix] = p.index;
        winner_z[pix] = p.z;
      }
    }
  }

  out.image = make_rgb(w, h);
  if (cloud.labels) out.labels = make_labels(w, h, settings.void_label);
  for (std::size_t pix = 0; pix < winner.size(); ++pix) {
    const std::uint32_t idx = winner[pix];
    float* rgb = out.image.data.data() + pix * 3;
    if (idx == kNone) {
      rgb[0] = settings.background[0];
      rgb[1] = settings.background[1];
      rgb[2] = settings.background[2];
      continue;
    }
    out.coverage.data[pix] = 1;
    out.depth.data[pix] = zmin[pix];
    rgb[0] = cloud.colors[idx][0];
    rgb[1] = cloud.colors[idx][1];
    rgb[2] = cloud.colors[idx][2];
    if (out.labels) out.labels->data[pix] = (*cloud.labels)[idx];
  }
  return out;
}

std::vector<RenderedFrame> render_trajectory(std::span<const FusedPointCloud> frames,
                                             const CameraTrajectory& traj,
                                             const Intrinsics& intrinsics,
                                             const RenderSettings& settings, int jobs) {
  if (frames.size() != traj.size())
    throw ValidationError("render_trajectory: frame count does not match trajectory length");
  std::vector<RenderedFrame> out(frames.size());
  parallel_for(frames.size(), jobs, [&](std::size_t t) {
    out[t] = render_points(frames[t], Camera{intrinsics, traj.extrinsics[t]}, settings);
  });
  return out;
}

Modality parse_modality(const std::string& s) {
  if (s == "rgb") return Modality::Rgb;
  if (s == "semantic") return Modality::Semantic;
  throw ValidationError("unknown modality '" + s + "'");
}

std::string to_string(Modality m) { return m == Modality::Rgb ? "rgb" : "semantic"; }

std::vector<RenderedFrame> reproject_baseline(std::span<const ViewFrame> input_views,
                                              const CameraTrajectory& traj,
                                              const Intrinsics& intrinsics,
                                              const RenderSettings& settings, Modality modality,
                                              const BaselineOptions& opts) {
  if (input_views.size() != traj.size())
    throw ValidationError("reproject_baseline: input length does not match trajectory length");
  for (const auto& v : input_views) {
    if (v.depth.data.empty()) throw ValidationError("reproject_baseline: missing depth");
    if (modality == Modality::Semantic && !v.semantic)
      throw ValidationError("reproject_baseline: semantic modality needs ground-truth labels");
  }
  FusionOptions fusion;
  fusion.far_plane = settings.far_clip;
  std::vector<RenderedFrame> out(input_views.size());
  parallel_for(input_views.size(), opts.jobs, [&](std::size_t t) {
    FusedPointCloud cloud;
    if (opts.accumulate_history) {
      cloud.timestamp = input_views[t].timestamp;
      const bool labeled = modality == Modality::Semantic || input_views[t].semantic.has_value();
      if (labeled) cloud.labels.emplace();
      for (std::size_t s = 0; s <= t; ++s) {
        auto part = unproject_view(input_views[s], 0, fusion);
        cloud.positions.insert(cloud.positions.end(), part.positions.begin(), part.positions.end());
        cloud.colors.insert(cloud.colors.end(), part.colors.begin(), part.colors.end());
        cloud.source_view.insert(cloud.source_view.end(), part.source_view.begin(), part.source_view.end());
        if (cloud.labels) {
          if (part.labels) cloud.labels->insert(cloud.labels->end(), part.labels->begin(), part.labels->end());
          else cloud.labels->resize(cloud.positions.size(), settings.void_label);
        }
      }
    } else {
      cloud = unproject_view(input_views[t], 0, fusion);
    }
    out[t] = render_points(cloud, Camera{intrinsics, traj.extrinsics[t]}, settings);
  });
  return out;
}

}  // namespace scene4d
