// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "scene4d/errors.hpp"
#include "scene4d/pointcloud.hpp"
#include "scene4d/synthscene.hpp"

using namespace scene4d;

namespace {

ViewFrame blank_view(int w, int h) {
  ViewFrame v;
  v.intrinsics = Intrinsics{w, h, 50.0, 50.0, w / 2.0, h / 2.0};
  v.rgb = make_rgb(w, h);
  v.depth = make_depth(w, h);
  return v;
}

SceneSpec one_sphere() {
  SceneSpec s;
  Sphere sp;
  sp.center0 = Vec3(0, 0, 1);
  sp.radius = 1.0;
  sp.label = 3;
  s.spheres.push_back(sp);
  return s;
}

}  // namespace

TEST_SUITE("pointcloud") {

TEST_CASE("principal point pixel unprojects onto the axis") {
  ViewFrame v = blank_view(4, 4);
  v.depth.at(2, 2) = 7.0;  // center (2.5, 2.5)
  v.intrinsics.cx = 2.5;
  v.intrinsics.cy = 2.5;
  const FusedPointCloud c = unproject_view(v);
  REQUIRE(c.size() == 1);
  CHECK((c.positions[0] - Vec3(0, 0, 7)).norm() < 1e-12);
}

TEST_CASE("invalid depth gives an empty cloud") {
  const FusedPointCloud c = unproject_view(blank_view(8, 6));
  CHECK(c.size() == 0);
}

TEST_CASE("far plane drops distant pixels") {
  ViewFrame v = blank_view(4, 4);
  v.depth.at(0, 0) = 10.0;
  v.depth.at(1, 0) = 600.0;
  CHECK(unproject_view(v).size() == 1);
  CHECK(count_valid_depth(v.depth) == 1);
  FusionOptions o;
  o.far_plane = 1000.0;
  CHECK(unproject_view(v, 0, o).size() == 2);
}

TEST_CASE("mismatched view shapes are rejected") {
  ViewFrame v = blank_view(4, 4);
  v.rgb = make_rgb(5, 4);
  CHECK_THROWS_AS(unproject_view(v), ValidationError);
}

TEST_CASE("sphere points lie on the surface and reproject exactly") {
  const SceneSpec spec = one_sphere();
  const auto state = simulate(spec, 0);
  const CameraRig rig = default_rig(96, 64);
  const ViewFrame v = render_analytic(state, spec, pose_to_extrinsics(rig.cameras[0]), rig.intrinsics);
  const FusedPointCloud c = unproject_view(v);
  REQUIRE(c.size() == count_valid_depth(v.depth));
  REQUIRE(c.size() > 100);
  double worst_surface = 0.0, worst_px = 0.0, worst_z = 0.0;
  std::size_t i = 0;
  for (int y = 0; y < v.depth.height; ++y)
    for (int x = 0; x < v.depth.width; ++x) {
      if (!depth_valid(v.depth.at(x, y))) continue;
      const Vec3& p = c.positions[i++];
      worst_surface = std::max(worst_surface, scene_surface_distance(state, spec, p));
      const Projection pr = project(v.intrinsics, v.extrinsics.world_to_camera(p));
      worst_px = std::max({worst_px, std::abs(pr.u - (x + 0.5)), std::abs(pr.v - (y + 0.5))});
      worst_z = std::max(worst_z, std::abs(pr.z - v.depth.at(x, y)));
    }
  CHECK(worst_surface < 1e-4);
  CHECK(worst_px < 1e-6);
  CHECK(worst_z < 1e-9);
  REQUIRE(c.labels.has_value());
}

TEST_CASE("fuse_frame concatenates views") {
  const SceneSpec spec = one_sphere();
  const auto state = simulate(spec, 0);
  const CameraRig rig = default_rig(64, 48);
  std::vector<ViewFrame> views;
  for (int i = 0; i < 3; ++i)
    views.push_back(render_analytic(state, spec, pose_to_extrinsics(rig.cameras[i]), rig.intrinsics));

  const FusedPointCloud one = fuse_frame(std::span<const ViewFrame>(views.data(), 1));
  const FusedPointCloud ref = unproject_view(views[0]);
  CHECK(one.positions == ref.positions);
  CHECK(one.colors == ref.colors);

  const FusedPointCloud all = fuse_frame(views);
  std::size_t expected = 0;
  for (const auto& v : views) expected += unproject_view(v).size();
  CHECK(all.size() == expected);
  CHECK(all.source_view.front() == 0);
  CHECK(all.source_view.back() == 2);
}

TEST_CASE("point records round trip") {
  FusedPointCloud c;
  c.timestamp = 9;
  c.labels.emplace();
  for (int i = 0; i < 20; ++i) {
    c.positions.emplace_back(0.25 * i, -1.5 + i, 3.0);
    c.colors.push_back({i / 255.0f, 1.0f, 0.0f});
    c.labels->push_back(static_cast<std::uint16_t>(i));
    c.source_view.push_back(static_cast<std::uint8_t>(i % 4));
  }
  const auto bytes = encode_point_records(c);
  CHECK(bytes.size() == 20 * kPointRecordBytes);
  const FusedPointCloud d = decode_point_records(bytes, true, 9);
  CHECK(d.positions == c.positions);
  CHECK(d.colors == c.colors);
  CHECK(*d.labels == *c.labels);
  CHECK(d.source_view == c.source_view);
  CHECK(d.timestamp == 9);
  CHECK_THROWS(decode_point_records(std::span<const std::uint8_t>(bytes.data(), 17), true, 0));
}

}  // TEST_SUITE
