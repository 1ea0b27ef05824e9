// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "scene4d/dataset.hpp"
#include "scene4d/errors.hpp"
#include "scene4d/io.hpp"
#include "scene4d/pipeline.hpp"
#include "support.hpp"

using namespace scene4d;
namespace fs = std::filesystem;

namespace {

RunConfig small_config() {
  RunConfig c;
  c.width = 48;
  c.height = 32;
  c.scene_frames = 14;
  c.camera_count = 2;
  c.seed = 5;
  return c;
}

TrajectorySpec first_trajectory(const fs::path& root) {
  return trajectory_from_json(read_json(root / "trajectories.json")["trajectories"][0]["trajectory"]);
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("config round trip") {
  RunConfig c = small_config();
  c.preset = "max180";
  c.mode = TrajectoryMode::Direct;
  c.splat_radius = 2;
  c.modality = Modality::Semantic;
  c.miou_mode = MiouMode::PerFrameAverage;
  const RunConfig back = run_config_from_json(run_config_to_json(c));
  CHECK(run_config_to_json(back) == run_config_to_json(c));
  CHECK(config_hash(back) == config_hash(c));

  RunConfig j = c;
  j.jobs = 8;
  CHECK(config_hash(j) == config_hash(c));
  j.seed = 6;
  CHECK(config_hash(j) != config_hash(c));

  CHECK_THROWS_AS(run_config_from_json({{"sed", 1}}), ValidationError);
  CHECK(run_config_from_json({{"seed", 9}}, c).preset == "max180");
}

TEST_CASE("argument parsers") {
  CHECK(parse_resolution("384x256") == std::pair<int, int>{384, 256});
  CHECK_THROWS_AS(parse_resolution("0x10"), ValidationError);
  CHECK_THROWS_AS(parse_resolution("abc"), ValidationError);
  CHECK(parse_angles("0:180:10").size() == 19);
  CHECK(parse_angles("0,45,90") == std::vector<double>{0, 45, 90});
  CHECK_THROWS_AS(parse_angles("0:10:0"), ValidationError);
  const Intrinsics k = rescale_intrinsics(intrinsics_from_fov(384, 256, 60), 192, 128);
  CHECK(k.fx == doctest::Approx(intrinsics_from_fov(192, 128, 60).fx));
}

TEST_CASE("synth, fuse, render and eval") {
  testing::TempDir dir("pipeline");
  const RunConfig cfg = small_config();
  cmd_synth(dir.path, cfg);
  const fs::path scene = dir.path / "scene_0000";
  const SceneManifest m = read_manifest(scene);
  CHECK(m.cameras.size() == 2);
  CHECK(find_scenes(dir.path) == std::vector<fs::path>{scene});
  CHECK_NOTHROW(check_manifest_files(scene, m));
  CHECK(manifest_to_json(manifest_from_json(manifest_to_json(m))) == manifest_to_json(m));

  const auto fused = cmd_fuse(scene, cfg);
  std::size_t expected = 0;
  for (std::size_t c = 0; c < m.cameras.size(); ++c) expected += count_valid_depth(load_view(scene, m, c, 0).depth);
  CHECK(fused["point_counts"][0] == expected);
  const auto first = testing::slurp(scene / "fused" / "frame_0000.bin");
  cmd_fuse(scene, cfg);
  CHECK(testing::slurp(scene / "fused" / "frame_0000.bin") == first);

  TrajectorySpec spec = first_trajectory(dir.path);
  CHECK(spec.source.elevation_deg == kEvaluationSourceElevationDeg);
  const auto r = cmd_render(scene, spec, dir.path / "run", cfg);
  CHECK(r["frames"] == 14);
  CHECK(testing::list_files(dir.path / "run" / "rgb").size() == 14);

  // Frame 0 of a gradual trajectory is a render at the source pose.
  const FusedPointCloud c0 = read_point_cloud(scene / "fused" / frame_filename(spec.clip.frame_index(0), ""));
  const Intrinsics k = m.cameras[0].intrinsics;
  const RenderedFrame direct = render_points(c0, Camera{k, pose_to_extrinsics(spec.source)}, cfg.render_settings(1));
  CHECK(read_png_rgb(dir.path / "run" / "rgb" / "frame_0000.png") == decode_png_rgb(encode_png_rgb(direct.image)));

  const auto cond = read_json(dir.path / "run" / "conditioning.json");
  const int bucket = motion_bucket(pose_delta(spec.source, spec.destination), SamplingBounds::preset(spec.preset));
  CHECK(cond["motion_bucket"] == bucket);
  CHECK(cond["frames"].size() == 14);
  CHECK(cond["fourier_features"].size() == 48);

  const auto report = cmd_eval(dir.path / "run", scene, std::nullopt, dir.path / "report.json", cfg);
  CHECK(fs::exists(dir.path / "report.json"));
  CHECK(report["run_count"] == 1);
  CHECK(fs::exists(dir.path / "run" / "masks" / "frame_0001.png"));

  RunConfig wrong = cfg;
  wrong.width = 64;
  CHECK_THROWS_AS(cmd_eval(dir.path / "run", scene, std::nullopt, dir.path / "r2.json", wrong), ValidationError);
  CHECK_THROWS_AS(cmd_eval(dir.path / "nothing", scene, std::nullopt, dir.path / "r3.json", cfg), IoError);

  spec.mode = TrajectoryMode::Direct;
  cmd_render(scene, spec, dir.path / "direct", cfg);
  const auto last = testing::slurp(dir.path / "direct" / "rgb" / "frame_0013.png");
  CHECK(testing::slurp(dir.path / "run" / "rgb" / "frame_0013.png") == last);
}

TEST_CASE("baseline at the identity pose") {
  testing::TempDir dir("baseline");
  const RunConfig cfg = small_config();
  cmd_synth(dir.path, cfg);
  TrajectorySpec spec = first_trajectory(dir.path);
  spec.destination = spec.source;
  const auto report = cmd_baseline(dir.path / "scene_0000", spec, dir.path / "base", cfg);
  CHECK(report["method"] == "reproject_rgbd");
  CHECK(report["aggregate"]["psnr_all"].get<double>() > 40.0);
  CHECK(baseline_final_frame_psnr(read_manifest(dir.path / "scene_0000").synthetic.value(), 0.0, cfg) == kPsnrCap);
}

TEST_CASE("all-valid rig fuses one point per pixel") {
  testing::TempDir dir("dense");
  const fs::path scene = dir.path / "scene";
  const CameraRig rig = default_rig();
  SceneManifest m;
  m.scene_id = "dense";
  m.frame_count = 1;
  for (std::size_t c = 0; c < rig.cameras.size(); ++c) {
    CameraEntry e;
    e.camera_id = std::to_string(c);
    e.intrinsics = rig.intrinsics;
    e.extrinsics = {pose_to_extrinsics(rig.cameras[c])};
    ViewFrame v;
    v.intrinsics = rig.intrinsics;
    v.extrinsics = e.extrinsics[0];
    v.rgb = make_rgb(384, 256, 0.5f);
    v.depth = DepthMap(384, 256, 1, 10.0);
    save_view(scene, e.camera_id, 0, v, m.modalities);
    m.cameras.push_back(e);
  }
  write_manifest(scene, m);
  const auto summary = cmd_fuse(scene, RunConfig{});
  CHECK(summary["total_points"] == 1572864);

  // An all-invalid scene fuses to nothing.
  const fs::path empty = dir.path / "empty";
  SceneManifest e = m;
  e.cameras.resize(1);
  ViewFrame v;
  v.intrinsics = rig.intrinsics;
  v.rgb = make_rgb(384, 256);
  v.depth = make_depth(384, 256);
  save_view(empty, e.cameras[0].camera_id, 0, v, e.modalities);
  write_manifest(empty, e);
  CHECK(cmd_fuse(empty, RunConfig{})["total_points"] == 0);

  SceneManifest no_depth = e;
  no_depth.modalities = {"rgb"};
  write_manifest(empty, no_depth);
  CHECK_THROWS_AS(cmd_fuse(empty, RunConfig{}), ValidationError);
  CHECK_THROWS_AS(cmd_fuse(dir.path / "missing", RunConfig{}), IoError);
}

}  // TEST_SUITE
