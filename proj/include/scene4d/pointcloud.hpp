// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "scene4d/camera.hpp"
#include "scene4d/image.hpp"

namespace scene4d {

/// One calibrated RGB-D(+semantic) view at one timestamp.
struct ViewFrame {
  ImageRGB rgb;
  std::optional<LabelMap> semantic;
  DepthMap depth;
  Intrinsics intrinsics;
  Extrinsics extrinsics;
  int timestamp = 0;

  void validate() const;
};

/// World-space points merged from one or more views at one timestamp.
struct FusedPointCloud {
  std::vector<Vec3> positions;
  std::vector<std::array<float, 3>> colors;
  std::optional<std::vector<std::uint16_t>> labels;
  std::vector<std::uint8_t> source_view;
  int timestamp = 0;

  std::size_t size() const { return positions.size(); }
  void reserve(std::size_t n);
  void validate() const;
};

struct FusionOptions {
  /// Pixels with depth beyond this distance (e.g. sky) are dropped.
  double far_plane = 500.0;
};

/// One point per valid depth pixel, placed at extrinsics * unproject(pixel center).
FusedPointCloud unproject_view(const ViewFrame& view, std::uint8_t view_id = 0,
                               const FusionOptions& opts = {});

/// Concatenates the unprojections of same-timestamp views; view i gets id i.
FusedPointCloud fuse_frame(std::span<const ViewFrame> views, const FusionOptions& opts = {});

/// Number of depth pixels unproject_view would keep.
std::size_t count_valid_depth(const DepthMap& depth, const FusionOptions& opts = {});

// Point record stream: per point, little-endian float32 x y z, uint8 r g b,
// uint16 label, uint8 view id (18 bytes). The JSON sidecar carries count and timestamp.
inline constexpr std::size_t kPointRecordBytes = 18;

std::vector<std::uint8_t> encode_point_records(const FusedPointCloud& cloud);
FusedPointCloud decode_point_records(std::span<const std::uint8_t> bytes, bool has_labels,
                                     int timestamp);

/// Writes `<stem>.bin` and `<stem>.json`.
void write_point_cloud(const std::filesystem::path& stem, const FusedPointCloud& cloud,
                       double far_plane);
FusedPointCloud read_point_cloud(const std::filesystem::path& stem);

}  // namespace scene4d
