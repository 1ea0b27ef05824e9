// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// On-disk scene layout:
//
//   <scene>/scene.json
//   <scene>/cam_<id>/rgb/frame_%04d.png       8-bit RGB
//   <scene>/cam_<id>/depth/frame_%04d.pfm     z-depth, little-endian PFM, 0 = invalid
//   <scene>/cam_<id>/semantic/frame_%04d.png  8-bit category ids
//
// Dataset roots additionally hold categories.json and trajectories.json.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scene4d/camera.hpp"
#include "scene4d/pointcloud.hpp"
#include "scene4d/synthscene.hpp"

namespace scene4d {

struct CameraEntry {
  std::string camera_id;
  Intrinsics intrinsics;
  /// One camera-to-world transform per frame.
  std::vector<Extrinsics> extrinsics;
};

struct SceneManifest {
  std::string scene_id;
  int frame_count = 0;
  double base_fps = 24.0;
  std::vector<CameraEntry> cameras;
  std::vector<std::string> modalities{"rgb", "depth"};
  double far_plane = 500.0;
  /// Present for generated scenes; allows exact ground truth at any pose.
  std::optional<SceneSpec> synthetic;
  nlohmann::json provenance = nlohmann::json::object();

  bool has_modality(const std::string& m) const;
  void validate() const;
};

nlohmann::json manifest_to_json(const SceneManifest& m);
SceneManifest manifest_from_json(const nlohmann::json& j);

SceneManifest read_manifest(const std::filesystem::path& scene_dir);
void write_manifest(const std::filesystem::path& scene_dir, const SceneManifest& m);

std::filesystem::path view_file(const std::filesystem::path& scene_dir, const std::string& camera_id,
                                const std::string& modality, int frame);
/// Throws IoError when any frame file referenced by the manifest is missing.
void check_manifest_files(const std::filesystem::path& scene_dir, const SceneManifest& m);

ViewFrame load_view(const std::filesystem::path& scene_dir, const SceneManifest& m,
                    std::size_t camera_index, int frame);
void save_view(const std::filesystem::path& scene_dir, const std::string& camera_id, int frame,
               const ViewFrame& view, const std::vector<std::string>& modalities);

/// Subdirectories of `root` that contain a scene.json (or `root` itself), sorted.
std::vector<std::filesystem::path> find_scenes(const std::filesystem::path& root);

}  // namespace scene4d
