// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene4d/dataset.hpp"

#include <algorithm>

#include "scene4d/io.hpp"

namespace scene4d {

namespace fs = std::filesystem;

bool SceneManifest::has_modality(const std::string& m) const {
  return std::find(modalities.begin(), modalities.end(), m) != modalities.end();
}

void SceneManifest::validate() const {
  if (scene_id.empty()) throw ValidationError("manifest: empty scene_id");
  if (frame_count < 1) throw ValidationError("manifest: frame_count must be positive");
  if (!(base_fps > 0.0)) throw ValidationError("manifest: base_fps must be positive");
  if (!(far_plane > 0.0)) throw ValidationError("manifest: far_plane must be positive");
  if (cameras.size() > 256) throw ValidationError("manifest: at most 256 cameras");
  for (const auto& m : modalities)
    if (m != "rgb" && m != "depth" && m != "semantic") throw ValidationError("manifest: unknown modality '" + m + "'");
  for (const auto& c : cameras) {
    if (c.camera_id.empty()) throw ValidationError("manifest: empty camera_id");
    c.intrinsics.validate();
    if (static_cast<int>(c.extrinsics.size()) != frame_count)
      throw ValidationError("manifest: camera '" + c.camera_id + "' needs one extrinsics per frame");
  }
}

namespace {

nlohmann::json matrix_json(const Mat4& m) {
  nlohmann::json a = nlohmann::json::array();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a.push_back(m(r, c));
  return a;
}

Mat4 matrix_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 16) throw ValidationError("manifest: extrinsics must have 16 entries");
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = j.at(r * 4 + c).get<double>();
  return m;
}

nlohmann::json intrinsics_json(const Intrinsics& k) {
  return {{"width", k.width}, {"height", k.height}, {"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy}};
}

Intrinsics intrinsics_from(const nlohmann::json& j) {
  Intrinsics k;
  k.width = j.at("width").get<int>();
  k.height = j.at("height").get<int>();
  k.fx = j.at("fx").get<double>();
  k.fy = j.at("fy").get<double>();
  k.cx = j.at("cx").get<double>();
  k.cy = j.at("cy").get<double>();
  return k;
}

}  // namespace

nlohmann::json manifest_to_json(const SceneManifest& m) {
  nlohmann::json cams = nlohmann::json::array();
  for (const auto& c : m.cameras) {
    nlohmann::json ext = nlohmann::json::array();
    for (const auto& e : c.extrinsics) ext.push_back(matrix_json(e.matrix()));
    cams.push_back({{"camera_id", c.camera_id}, {"intrinsics", intrinsics_json(c.intrinsics)}, {"extrinsics", ext}});
  }
  nlohmann::json j = {{"scene_id", m.scene_id},   {"frame_count", m.frame_count}, {"base_fps", m.base_fps},
                      {"cameras", cams},          {"modalities", m.modalities},   {"far_plane", m.far_plane},
                      {"provenance", m.provenance}};
  if (m.synthetic) j["synthetic"] = scene_spec_to_json(*m.synthetic);
  return j;
}

SceneManifest manifest_from_json(const nlohmann::json& j) {
  try {
    SceneManifest m;
    m.scene_id = j.at("scene_id").get<std::string>();
    m.frame_count = j.at("frame_count").get<int>();
    m.base_fps = j.at("base_fps").get<double>();
    m.modalities = j.at("modalities").get<std::vector<std::string>>();
    m.far_plane = j.value("far_plane", 500.0);
    for (const auto& c : j.at("cameras")) {
      CameraEntry e;
      e.camera_id = c.at("camera_id").get<std::string>();
      e.intrinsics = intrinsics_from(c.at("intrinsics"));
      for (const auto& x : c.at("extrinsics")) e.extrinsics.push_back(Extrinsics::from_matrix(matrix_from(x)));
      m.cameras.push_back(std::move(e));
    }
    if (j.contains("synthetic")) m.synthetic = scene_spec_from_json(j.at("synthetic"));
    m.provenance = j.value("provenance", nlohmann::json::object());
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("manifest json: ") + e.what());
  }
}

SceneManifest read_manifest(const fs::path& scene_dir) { return manifest_from_json(read_json(scene_dir / "scene.json")); }

void write_manifest(const fs::path& scene_dir, const SceneManifest& m) {
  m.validate();
  write_json(scene_dir / "scene.json", manifest_to_json(m));
}

fs::path view_file(const fs::path& scene_dir, const std::string& camera_id, const std::string& modality, int frame) {
  return scene_dir / ("cam_" + camera_id) / modality / frame_filename(frame, modality == "depth" ? ".pfm" : ".png");
}

void check_manifest_files(const fs::path& scene_dir, const SceneManifest& m) {
  for (const auto& c : m.cameras)
    for (const auto& mod : m.modalities)
      for (int f = 0; f < m.frame_count; ++f) {
        const auto p = view_file(scene_dir, c.camera_id, mod, f);
        if (!fs::exists(p)) throw IoError("missing frame file '" + p.string() + "'");
      }
}

ViewFrame load_view(const fs::path& scene_dir, const SceneManifest& m, std::size_t camera_index, int frame) {
  if (camera_index >= m.cameras.size()) throw ValidationError("load_view: camera index out of range");
  if (frame < 0 || frame >= m.frame_count) throw ValidationError("load_view: frame out of range");
  if (!m.has_modality("depth")) throw ValidationError("scene has no depth modality");
  const auto& cam = m.cameras[camera_index];
  ViewFrame v;
  v.intrinsics = cam.intrinsics;
  v.extrinsics = cam.extrinsics[frame];
  v.timestamp = frame;
  v.depth = read_pfm(view_file(scene_dir, cam.camera_id, "depth", frame));
  v.rgb = m.has_modality("rgb") ? read_png_rgb(view_file(scene_dir, cam.camera_id, "rgb", frame))
                                : make_rgb(cam.intrinsics.width, cam.intrinsics.height);
  if (m.has_modality("semantic")) v.semantic = read_png_labels(view_file(scene_dir, cam.camera_id, "semantic", frame));
  v.validate();
  return v;
}

void save_view(const fs::path& scene_dir, const std::string& camera_id, int frame, const ViewFrame& view,
               const std::vector<std::string>& modalities) {
  for (const auto& mod : modalities) {
    const auto p = view_file(scene_dir, camera_id, mod, frame);
    if (mod == "rgb") write_png_rgb(p, view.rgb);
    else if (mod == "depth") write_pfm(p, view.depth);
    else if (mod == "semantic" && view.semantic) write_png_labels(p, *view.semantic);
  }
}

std::vector<fs::path> find_scenes(const fs::path& root) {
  std::vector<fs::path> out;
  if (fs::exists(root / "scene.json")) return {root};
  if (!fs::is_directory(root)) throw IoError("'" + root.string() + "' is not a directory");
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory() && fs::exists(e.path() / "scene.json")) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace scene4d
