// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene4d/pointcloud.hpp"

#include <cmath>
#include <cstring>

#include "scene4d/io.hpp"

namespace scene4d {

void ViewFrame::validate() const {
  intrinsics.validate();
  if (rgb.channels != 3) throw ValidationError("view: rgb must have 3 channels");
  if (!rgb.same_shape(intrinsics.width, intrinsics.height) ||
      !depth.same_shape(intrinsics.width, intrinsics.height))
    throw ValidationError("view: image dimensions do not match intrinsics");
  if (semantic && !semantic->same_shape(intrinsics.width, intrinsics.height))
    throw ValidationError("view: semantic dimensions do not match intrinsics");
  for (double d : depth.data)
    if (!std::isfinite(d) || d < 0.0) throw ValidationError("view: depth must be finite and >= 0");
}

void FusedPointCloud::reserve(std::size_t n) {
  positions.reserve(n);
  colors.reserve(n);
  source_view.reserve(n);
  if (labels) labels->reserve(n);
}

void FusedPointCloud::validate() const {
  const std::size_t n = positions.size();
  if (colors.size() != n || source_view.size() != n || (labels && labels->size() != n))
    throw ValidationError("point cloud: attribute arrays differ in length");
}

namespace {

bool keep_depth(double d, double far_plane) { return d > 0.0 && std::isfinite(d) && d <= far_plane; }

}  // namespace

std::size_t count_valid_depth(const DepthMap& depth, const FusionOptions& opts) {
  std::size_t n = 0;
  for (double d : depth.data) n += keep_depth(d, opts.far_plane) ? 1 : 0;
  return n;
}

namespace {

void append_view(const ViewFrame& view, std::uint8_t view_id, const FusionOptions& opts,
                 FusedPointCloud& out) {
  const Intrinsics& k = view.intrinsics;
  const Mat3 r = view.extrinsics.rotation();
  const Vec3 t = view.extrinsics.translation();
  for (int y = 0; y < k.height; ++y) {
    for (int x = 0; x < k.width; ++x) {
      const double d = view.depth.at(x, y);
      if (!keep_depth(d, opts.far_plane)) continue;
      const Vec3 p_cam = unproject_pixel(k, x + 0.5, y + 0.5, d);
      out.positions.push_back(r * p_cam + t);
      out.colors.push_back({view.rgb.at(x, y, 0), view.rgb.at(x, y, 1), view.rgb.at(x, y, 2)});
      if (out.labels) out.labels->push_back(view.semantic ? view.semantic->at(x, y) : 0);
      out.source_view.push_back(view_id);
    }
  }
}

}  // namespace

FusedPointCloud unproject_view(const ViewFrame& view, std::uint8_t view_id,
                               const FusionOptions& opts) {
  view.validate();
  FusedPointCloud cloud;
  cloud.timestamp = view.timestamp;
  if (view.semantic) cloud.labels.emplace();
  cloud.reserve(count_valid_depth(view.depth, opts));
  append_view(view, view_id, opts, cloud);
  return cloud;
}

FusedPointCloud fuse_frame(std::span<const ViewFrame> views, const FusionOptions& opts) {
  FusedPointCloud cloud;
  if (views.empty()) return cloud;
  if (views.size() > 256) throw ValidationError("fuse_frame: at most 256 views are supported");
  cloud.timestamp = views.front().timestamp;
  bool all_semantic = true;
  std::size_t total = 0;
  for (const auto& v : views) {
    if (v.timestamp != cloud.timestamp) throw ValidationError("fuse_frame: timestamp mismatch");
    v.validate();
    all_semantic = all_semantic && v.semantic.has_value();
    total += count_valid_depth(v.depth, opts);
  }
  if (all_semantic) cloud.labels.emplace();
  cloud.reserve(total);
  for (std::size_t i = 0; i < views.size(); ++i)
    append_view(views[i], static_cast<std::uint8_t>(i), opts, cloud);
  return cloud;
}

std::vector<std::uint8_t> encode_point_records(const FusedPointCloud& cloud) {
  cloud.validate();
  std::vector<std::uint8_t> out(cloud.size() * kPointRecordBytes);
  std::uint8_t* p = out.data();
  for (std::size_t i = 0; i < cloud.size(); ++i, p += kPointRecordBytes) {
    for (int a = 0; a < 3; ++a) {
      const float f = static_cast<float>(cloud.positions[i][a]);
      std::uint32_t bits;
      std::memcpy(&bits, &f, 4);
      for (int b = 0; b < 4; ++b) p[a * 4 + b] = static_cast<std::uint8_t>(bits >> (8 * b));
    }
    for (int c = 0; c < 3; ++c) p[12 + c] = quantize_unit(cloud.colors[i][c]);
    const std::uint16_t label = cloud.labels ? (*cloud.labels)[i] : 0;
    p[15] = static_cast<std::uint8_t>(label & 0xff);
    p[16] = static_cast<std::uint8_t>(label >> 8);
    p[17] = cloud.source_view[i];
  }
  return out;
}

FusedPointCloud decode_point_records(std::span<const std::uint8_t> bytes, bool has_labels,
                                     int timestamp) {
  if (bytes.size() % kPointRecordBytes != 0) throw IoError("point records: truncated stream");
  const std::size_t n = bytes.size() / kPointRecordBytes;
  FusedPointCloud cloud;
  cloud.timestamp = timestamp;
  if (has_labels) cloud.labels.emplace();
  cloud.reserve(n);
  const std::uint8_t* p = bytes.data();
  for (std::size_t i = 0; i < n; ++i, p += kPointRecordBytes) {
    Vec3 pos;
    for (int a = 0; a < 3; ++a) {
      std::uint32_t bits = 0;
      for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(p[a * 4 + b]) << (8 * b);
      float f;
      std::memcpy(&f, &bits, 4);
      pos[a] = f;
    }
    cloud.positions.push_back(pos);
    cloud.colors.push_back({p[12] / 255.0f, p[13] / 255.0f, p[14] / 255.0f});
    if (has_labels) cloud.labels->push_back(static_cast<std::uint16_t>(p[15] | (p[16] << 8)));
    cloud.source_view.push_back(p[17]);
  }
  return cloud;
}

void write_point_cloud(const std::filesystem::path& stem, const FusedPointCloud& cloud,
                       double far_plane) {
  std::filesystem::path bin = stem, side = stem;
  bin += ".bin";
  side += ".json";
  write_file_atomic(bin, encode_point_records(cloud));
  write_json(side, {{"count", cloud.size()},
                    {"timestamp", cloud.timestamp},
                    {"has_labels", cloud.labels.has_value()},
                    {"record_bytes", kPointRecordBytes},
                    {"far_plane", far_plane}});
}

FusedPointCloud read_point_cloud(const std::filesystem::path& stem) {
  std::filesystem::path bin = stem, side = stem;
  bin += ".bin";
  side += ".json";
  const auto meta = read_json(side);
  auto cloud = decode_point_records(read_file(bin), meta.value("has_labels", false),
                                    meta.value("timestamp", 0));
  if (cloud.size() != meta.value("count", std::size_t{0}))
    throw IoError("point records: count does not match sidecar");
  return cloud;
}

}  // namespace scene4d
