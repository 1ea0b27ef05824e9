// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//   scene4d_acceptance [--criterion=<name>] [--list]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../support.hpp"
#include "scene4d/dataset.hpp"
#include "scene4d/io.hpp"
#include "scene4d/metrics.hpp"
#include "scene4d/parallel.hpp"
#include "scene4d/pipeline.hpp"
#include "scene4d/pointcloud.hpp"
#include "scene4d/splat.hpp"
#include "scene4d/synthscene.hpp"
#include "scene4d/train_support.hpp"
#include "scene4d/trajectory.hpp"

using namespace scene4d;
using scene4d::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SceneSpec scene_with(int spheres, std::uint64_t seed, int frames) {
  Rng rng(seed);
  SceneGenOptions o;
  o.min_spheres = spheres;
  o.max_spheres = spheres;
  o.frame_count = frames;
  return generate_scene(rng, o);
}

// ---------------------------------------------------------------------------------------

void geometry_roundtrip(Outcome& out) {
  const auto t0 = Clock::now();
  const SceneSpec spec = scene_with(10, 7, kClipFrames);
  const CameraRig rig = default_rig(kDefaultWidth, kDefaultHeight);
  RenderSettings rs;
  rs.splat_radius = 0;

  double worst_psnr = std::numeric_limits<double>::infinity(), worst_cov = 1.0;
  for (int f = 0; f < kClipFrames; ++f) {
    const auto state = simulate(spec, f);
    std::vector<ViewFrame> views;
    for (const auto& pose : rig.cameras)
      views.push_back(render_analytic(state, spec, pose_to_extrinsics(pose), rig.intrinsics, f));
    const FusedPointCloud cloud = fuse_frame(views);

    double se = 0.0;
    std::size_t covered = 0, valid = 0, covered_valid = 0;
    for (const auto& v : views) {
      const RenderedFrame r = render_points(cloud, Camera{v.intrinsics, v.extrinsics}, rs);
      for (std::size_t i = 0; i < r.coverage.data.size(); ++i) {
        const bool gt_valid = depth_valid(v.depth.data[i]);
        valid += gt_valid;
        if (!r.coverage.data[i]) continue;
        ++covered;
        covered_valid += gt_valid;
        for (int c = 0; c < 3; ++c) {
          const double d = static_cast<double>(r.image.data[i * 3 + c]) - v.rgb.data[i * 3 + c];
          se += d * d;
        }
      }
    }
    const double mse = se / (3.0 * static_cast<double>(covered));
    const double p = mse == 0.0 ? kPsnrCap : std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
    const double cov = static_cast<double>(covered_valid) / static_cast<double>(valid);
    worst_psnr = std::min(worst_psnr, p);
    worst_cov = std::min(worst_cov, cov);
  }
  const double secs = seconds_since(t0);
  out.detail << "min frame PSNR " << worst_psnr << " dB, min coverage " << worst_cov << ", " << secs << " s; ";
  out.require(worst_psnr >= 30.0, "PSNR below 30 dB");
  out.require(worst_cov >= 0.98, "coverage below 98%");
  out.require(secs <= 60.0, "runtime above 60 s");
}

void occlusion_oracle(Outcome& out) {
  Rng rng(20240);
  const auto bounds = SamplingBounds::max90();
  const Intrinsics k = default_rig(kDefaultWidth, kDefaultHeight).intrinsics;
  std::size_t agree = 0, total = 0;
  double worst = 1.0;
  for (int pair = 0; pair < 20; ++pair) {
    const SceneSpec spec = scene_with(2, 1000 + pair, 1);
    const auto state = simulate(spec, 0);
    const auto [src, dst] = sample_pose_pair(rng, bounds);
    const Extrinsics es = pose_to_extrinsics(src), et = pose_to_extrinsics(dst);
    const ViewFrame target = render_analytic(state, spec, et, k);
    const ViewFrame source = render_analytic(state, spec, es, k);
    const OcclusionMask mask = compute_occlusion_mask(target.depth, Camera{k, et}, Camera{k, es}, source.depth);
    std::size_t a = 0, n = 0;
    for (int y = 0; y < k.height; ++y)
      for (int x = 0; x < k.width; ++x) {
        const double z = target.depth.at(x, y);
        if (!depth_valid(z)) continue;
        const Vec3 world = et.camera_to_world(unproject_pixel(k, x + 0.5, y + 0.5, z));
        const Visibility oracle = scene4d::testing::raycast_visibility(state, spec, k, es, world);
        ++n;
        a += static_cast<std::uint8_t>(oracle) == mask.at(x, y);
      }
    agree += a;
    total += n;
    worst = std::min(worst, static_cast<double>(a) / static_cast<double>(n));
  }
  const double rate = static_cast<double>(agree) / static_cast<double>(total);
  out.detail << "agreement " << rate << " over " << total << " valid pixels (worst pair " << worst << "); ";
  out.require(rate >= 0.99, "agreement below 99%");
}

void se3_invariants(Outcome& out) {
  Rng rng(42);
  double worst_rigid = 0.0, worst_inverse = 0.0;
  bool endpoints = true, direct = true;
  for (int i = 0; i < 10000; ++i) {
    const auto bounds = i % 2 ? SamplingBounds::max180() : SamplingBounds::max90();
    const auto [src, dst] = sample_pose_pair(rng, bounds);
    const Extrinsics es = pose_to_extrinsics(src), ed = pose_to_extrinsics(dst);
    worst_rigid = std::max({worst_rigid, orthonormality_error(es.rotation()), orthonormality_error(ed.rotation())});
    const Extrinsics rel = relative_extrinsics(es, ed);
    const Mat4 i4 = Mat4::Identity();
    worst_inverse = std::max({worst_inverse, (((es * rel) * ed.inverse()).matrix() - i4).cwiseAbs().maxCoeff(),
                              ((rel * rel.inverse()).matrix() - i4).cwiseAbs().maxCoeff()});

    const auto g = build_gradual(src, dst, kClipFrames);
    endpoints = endpoints && g.poses.front() == src && g.poses.back() == dst && g.extrinsics.front() == es &&
                g.extrinsics.back() == ed;
    const auto d = build_direct(src, dst, kClipFrames);
    for (std::size_t t = 0; t < d.size(); ++t) direct = direct && d.poses[t] == dst && d.extrinsics[t] == ed;
  }
  const int odd = 15;
  const double a0 = sine_ease_alpha(0, kClipFrames), a1 = sine_ease_alpha(kClipFrames - 1, kClipFrames);
  const double mid = sine_ease_alpha((odd - 1) / 2, odd);
  out.detail << "max rigidity error " << worst_rigid << ", max inverse-composition error " << worst_inverse << "; ";
  out.require(worst_rigid <= 1e-9, "rigidity");
  out.require(worst_inverse <= 1e-9, "inverse composition");
  out.require(endpoints, "gradual endpoints not exact");
  out.require(direct, "direct trajectory not constant");
  out.require(a0 == 0.0 && a1 == 1.0, "sine-ease endpoints");
  out.require(std::abs(mid - 0.5) <= 1e-12, "sine-ease midpoint");
}

void sampling_bounds(Outcome& out) {
  for (const std::string name : {"max90", "max180"}) {
    const auto b = SamplingBounds::preset(name);
    Rng rng(name == "max90" ? 11 : 12);
    std::vector<double> s;
    std::size_t violations = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto [src, dst] = sample_pose_pair(rng, b);
      if (!b.contains(src) || !b.contains(dst) || !b.delta_within(pose_delta(src, dst))) ++violations;
      s.push_back(std::sin(deg2rad(src.elevation_deg)));
    }
    // Kolmogorov-Smirnov statistic of sin(theta) against the uniform law on its range.
    std::sort(s.begin(), s.end());
    const double lo = std::sin(deg2rad(b.elevation_min_deg)), hi = std::sin(deg2rad(b.elevation_max_deg));
    double ks = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double cdf = (s[i] - lo) / (hi - lo);
      ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / s.size()),
                     std::abs(static_cast<double>(i + 1) / s.size() - cdf)});
    }
    out.detail << name << ": " << violations << " violations, KS " << ks << "; ";
    out.require(violations == 0, name + " bound violations");
    out.require(ks < 0.02, name + " KS statistic");
  }
  // Evaluation profile, through the dataset generator.
  TempDir tmp("acc_sampling");
  RunConfig cfg;
  cfg.scene_count = 2;
  cfg.scene_frames = kClipFrames;
  cfg.camera_count = 1;
  cfg.width = 64;
  cfg.height = 48;
  cmd_synth(tmp.path, cfg);
  const auto trajs = read_json(tmp.path / "trajectories.json").at("trajectories");
  bool pinned = trajs.size() == 8;
  for (const auto& t : trajs) pinned = pinned && trajectory_from_json(t.at("trajectory")).source.elevation_deg == 5.0;
  Rng rng(3);
  for (int i = 0; i < 1000; ++i)
    pinned = pinned && sample_source_pose(rng, SamplingBounds::max90(), kEvaluationSourceElevationDeg).elevation_deg == 5.0;
  out.require(pinned, "evaluation source elevation not pinned at 5 degrees");
}

void metric_correctness(Outcome& out) {
  // PSNR closed form.
  ImageRGB a = make_rgb(32, 32, 0.25f), b = a;
  for (auto& v : b.data) v += 16.0f / 255.0f;
  const double p = psnr(b, a);
  out.detail << "PSNR " << p << " dB; ";
  out.require(std::abs(p - 24.05) <= 0.01, "PSNR closed form");

  // SSIM.
  const ImageRGB x = scene4d::testing::ssim_test_image(), y = scene4d::testing::ssim_test_image(0.05f);
  const double self = ssim(x, x);
  const double s = ssim(y, x);
  std::vector<double> la(x.pixel_count()), lb(x.pixel_count());
  for (std::size_t i = 0; i < la.size(); ++i) {
    lb[i] = x.data[i * 3];
    la[i] = y.data[i * 3];
  }
  const double ref = scene4d::testing::reference_ssim(la, lb, 64, 64);
  out.detail << "SSIM " << s << " (direct " << ref << ", skimage " << scene4d::testing::kSkimageShiftedSsim << "); ";
  out.require(self == 1.0, "SSIM(x, x) != 1");
  out.require(std::abs(s - ref) <= 1e-4, "SSIM vs direct-window reference");
  out.require(std::abs(s - scene4d::testing::kSkimageShiftedSsim) <= 1e-4, "SSIM vs skimage reference");

  // mIoU.
  LabelMap g1 = make_labels(6, 1), p1 = g1, g2 = g1, p2 = g1;
  g1.data = {1, 1, 1, 1, 2, 2};
  p1.data = {1, 1, 1, 2, 1, 2};
  g2.data = {1, 1, 1, 2, 2, 2};
  p2.data = {1, 2, 2, 1, 1, 2};
  IouAccumulator acc;
  acc.add(p1, g1);
  acc.add(p2, g2);
  IouAccumulator same;
  same.add(g1, g1);
  same.add(g2, g2);
  out.require(acc.iou(1) == 0.4, "two-frame accumulation IoU != 0.4");
  out.require(same.mean_iou(same.top_categories(10)) == 1.0, "mIoU identity != 1");

  // Frame 0 is never read: poison it and compare aggregates.
  Rng rng(5);
  std::normal_distribution<float> noise(0.0f, 0.05f);
  VideoClip gt, pred;
  for (int t = 0; t < 4; ++t) {
    ImageRGB g = scene4d::testing::ssim_test_image(0.01f * t), q = g;
    for (auto& v : q.data) v += noise(rng);
    LabelMap lg = make_labels(64, 64), lp = lg;
    for (std::size_t i = 0; i < lg.data.size(); ++i) {
      lg.data[i] = static_cast<std::uint16_t>(i % 5);
      lp.data[i] = static_cast<std::uint16_t>((i % 7) % 5);
    }
    gt.rgb.push_back(g);
    pred.rgb.push_back(q);
    gt.labels.push_back(lg);
    pred.labels.push_back(lp);
  }
  VideoClip poisoned = pred;
  std::fill(poisoned.rgb[0].data.begin(), poisoned.rgb[0].data.end(), std::numeric_limits<float>::quiet_NaN());
  std::fill(poisoned.labels[0].data.begin(), poisoned.labels[0].data.end(), std::uint16_t{999});
  bool frame0_ok = true;
  for (Modality m : {Modality::Rgb, Modality::Semantic}) {
    const auto clean = report_to_json(evaluate_sequence(pred, gt, {}, m)).dump();
    const auto dirty = report_to_json(evaluate_sequence(poisoned, gt, {}, m)).dump();
    frame0_ok = frame0_ok && clean == dirty;
  }
  out.require(frame0_ok, "poisoned frame 0 changed the aggregates");
}

void loss_suite(Outcome& out) {
  const LossConfig cfg = loss_config_from_categories(default_categories());
  out.require(focal_fraction(0, cfg) == 1.0 && focal_fraction(5000, cfg) == 0.1 && focal_fraction(10000, cfg) == 0.1,
              "focal fraction endpoints");

  Rng rng(9);
  std::normal_distribution<double> n01;
  FeatureGrid pred(3, 4, 5, 6), target(3, 4, 5, 6);
  for (auto& v : pred.data) v = n01(rng);
  for (auto& v : target.data) v = n01(rng);
  double mse = 0.0;
  for (std::size_t i = 0; i < pred.data.size(); ++i) mse += (pred.data[i] - target.data[i]) * (pred.data[i] - target.data[i]);
  mse /= static_cast<double>(pred.positions());
  const double full = focal_l2(pred, target, 1.0);
  out.detail << "q=1 loss " << full << " vs MSE " << mse << "; ";
  out.require(std::abs(full - mse) <= 1e-12, "q = 1 differs from MSE per position");

  FeatureGrid e(1, 1, 4, 1), z(1, 1, 4, 1);
  e.data = {1.0, std::sqrt(2.0), std::sqrt(3.0), 2.0};
  out.require(focal_l2(e, z, 0.5) == 3.5, "top-k example != 3.5");

  const auto cats = default_categories();
  LabelMap labels = make_labels(static_cast<int>(cats.size()), 1);
  std::size_t i = 0;
  for (const auto& [id, name] : cats) labels.data[i++] = id;
  const WeightMap w = category_weight_map({labels}, cfg);
  bool weights_ok = true;
  i = 0;
  for (const auto& [id, name] : cats) {
    const auto& veh = vehicle_category_names();
    const auto& per = person_category_names();
    const double expect = std::count(veh.begin(), veh.end(), name) ? 3.0 : std::count(per.begin(), per.end(), name) ? 7.0 : 1.0;
    weights_ok = weights_ok && w.data[i++] == expect;
  }
  out.require(weights_ok, "category weights");
  out.require(cfg.vehicle_ids.size() == vehicle_category_names().size() &&
                  cfg.person_ids.size() == person_category_names().size(),
              "category lists not fully resolved");
}

void baseline_sweep(Outcome& out) {
  TempDir tmp("acc_sweep");
  RunConfig cfg;
  cfg.scene_count = 3;
  cfg.scene_frames = kClipFrames;
  cfg.camera_count = 1;
  cmd_synth(tmp.path / "data", cfg);
  std::vector<double> angles;
  for (int a = 0; a <= 180; a += 10) angles.push_back(a);
  const auto rows = cmd_sweep(tmp.path / "data", angles, tmp.path / "sweep.csv", cfg);
  auto at = [&](double a) {
    for (const auto& r : rows)
      if (r.angle_deg == a) return r.psnr_last_frame;
    return std::numeric_limits<double>::quiet_NaN();
  };
  const std::string csv = [&] {
    const auto bytes = read_file(tmp.path / "sweep.csv");
    return std::string(bytes.begin(), bytes.end());
  }();
  out.detail << "PSNR 0deg " << at(0) << ", 20deg " << at(20) << ", 90deg " << at(90) << "; ";
  out.require(at(0) == kPsnrCap, "0 degree rotation not capped");
  out.require(at(90) < at(20), "PSNR(90) not below PSNR(20)");
  out.require(csv.rfind("angle_deg,psnr_last_frame\n", 0) == 0 && rows.size() == angles.size(), "CSV output");
}

void determinism_formats(Outcome& out) {
  TempDir tmp("acc_determinism");
  RunConfig cfg;
  cfg.scene_count = 1;
  cfg.scene_frames = kClipFrames;
  for (const std::string run : {"a", "b"}) {
    RunConfig c = cfg;
    c.jobs = run == "a" ? 1 : 3;
    const fs::path root = tmp.path / run;
    cmd_synth(root, c);
    const fs::path scene = root / "scene_0000";
    cmd_fuse(scene, c);
    const auto spec = trajectory_from_json(read_json(root / "trajectories.json").at("trajectories").at(0).at("trajectory"));
    cmd_render(scene, spec, root / "runs" / "render", c);
    cmd_baseline(scene, spec, root / "runs" / "baseline", c);
    cmd_eval(root / "runs", scene, std::nullopt, root / "report.json", c);
  }
  std::string why;
  std::size_t files = 0;
  const bool same = scene4d::testing::same_tree(tmp.path / "a", tmp.path / "b", &why, &files);
  out.detail << files << " files compared; ";
  out.require(same, "two runs differ: " + why);

  // Format round trips: decode then re-encode must reproduce the bytes.
  const fs::path scene = tmp.path / "a" / "scene_0000";
  const SceneManifest m = read_manifest(scene);
  bool rt = true;
  for (int f = 0; f < 3; ++f) {
    const auto pfm = read_file(view_file(scene, m.cameras[0].camera_id, "depth", f));
    const auto png = read_file(view_file(scene, m.cameras[0].camera_id, "rgb", f));
    const auto sem = read_file(view_file(scene, m.cameras[0].camera_id, "semantic", f));
    rt = rt && encode_pfm(decode_pfm(pfm)) == pfm && encode_png_rgb(decode_png_rgb(png)) == png &&
         encode_png_labels(decode_png_labels(sem)) == sem;
  }
  const auto mask = read_file(tmp.path / "a" / "runs" / "render" / "masks" / frame_filename(1, ".png"));
  const auto cov = read_file(tmp.path / "a" / "runs" / "render" / "coverage" / frame_filename(1, ".png"));
  rt = rt && encode_png_gray(decode_png_gray(mask), 2) == mask && encode_png_gray(decode_png_gray(cov), 1) == cov;
  const auto cloud_bytes = read_file(scene / "fused" / frame_filename(0, ".bin"));
  const auto cloud = read_point_cloud(scene / "fused" / frame_filename(0, ""));
  rt = rt && encode_point_records(cloud) == cloud_bytes;
  {
    const auto before = read_file(scene / "scene.json");
    write_manifest(tmp.path / "copy", read_manifest(scene));
    rt = rt && read_file(tmp.path / "copy" / "scene.json") == before;
    const auto traj = read_file(tmp.path / "a" / "runs" / "render" / "trajectory.json");
    write_json(tmp.path / "copy" / "trajectory.json",
               trajectory_to_json(trajectory_from_json(read_json(tmp.path / "a" / "runs" / "render" / "trajectory.json"))));
    rt = rt && read_file(tmp.path / "copy" / "trajectory.json") == traj;
    const auto report = read_file(tmp.path / "a" / "report.json");
    write_json(tmp.path / "copy" / "report.json", read_json(tmp.path / "a" / "report.json"));
    rt = rt && read_file(tmp.path / "copy" / "report.json") == report;
  }
  out.require(rt, "format round trip not byte-identical");

  // Renderer output independent of point order.
  const auto state = simulate(*m.synthetic, 0);
  std::vector<ViewFrame> views;
  for (std::size_t c = 0; c < 4; ++c) views.push_back(load_view(scene, m, c * 4, 0));
  const FusedPointCloud fused = fuse_frame(views);
  std::vector<std::size_t> perm(fused.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(77);
  std::shuffle(perm.begin(), perm.end(), rng);
  FusedPointCloud shuffled;
  shuffled.labels.emplace();
  for (std::size_t i : perm) {
    shuffled.positions.push_back(fused.positions[i]);
    shuffled.colors.push_back(fused.colors[i]);
    shuffled.labels->push_back((*fused.labels)[i]);
    shuffled.source_view.push_back(fused.source_view[i]);
  }
  bool order_free = true;
  const Camera cam{m.cameras[2].intrinsics, pose_to_extrinsics(PoseDescription{30.0, 20.0, 14.0, default_look_at()})};
  for (int radius : {0, 1, 2}) {
    RenderSettings rs;
    rs.splat_radius = radius;
    const auto r1 = render_points(fused, cam, rs), r2 = render_points(shuffled, cam, rs);
    order_free = order_free && r1.image == r2.image && r1.depth == r2.depth && *r1.labels == *r2.labels &&
                 r1.coverage == r2.coverage;
  }
  out.require(order_free, "render depends on point order");
}

void performance(Outcome& out) {
  const SceneSpec spec = scene_with(10, 3, kClipFrames);
  const CameraRig rig = default_rig(kDefaultWidth, kDefaultHeight);
  std::vector<std::vector<ViewFrame>> views(kClipFrames);
  for (int f = 0; f < kClipFrames; ++f) {
    const auto state = simulate(spec, f);
    for (const auto& pose : rig.cameras)
      views[f].push_back(render_analytic(state, spec, pose_to_extrinsics(pose), rig.intrinsics, f));
  }
  const auto traj = build_gradual(rig.cameras[0], PoseDescription{60.0, 25.0, 16.0, default_look_at()}, kClipFrames);

  std::size_t points = 0;
  auto run = [&](int jobs) {
    std::vector<std::size_t> counts(kClipFrames);
    const auto t0 = Clock::now();
    parallel_for(kClipFrames, jobs, [&](std::size_t f) {
      const FusedPointCloud cloud = fuse_frame(views[f]);
      const RenderedFrame r = render_points(cloud, Camera{rig.intrinsics, traj.extrinsics[f]});
      counts[f] = cloud.size() + (r.coverage_fraction() > 2.0);
    });
    points = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    return seconds_since(t0);
  };
  const double t1 = run(1);
  const double t4 = run(4);
  const double speedup = t1 / t4;
  out.detail << points << " points, 1 worker " << t1 << " s, 4 workers " << t4 << " s, speedup " << speedup
             << " on " << std::thread::hardware_concurrency() << " hardware threads; ";
  out.require(t1 <= 120.0, "single-threaded time above 120 s");
  out.require(speedup >= 3.0, "speedup with 4 workers below 3x");
}

struct Criterion {
  const char* name;
  void (*fn)(Outcome&);
};

const Criterion kCriteria[] = {
    {"geometry_roundtrip", geometry_roundtrip}, {"occlusion_oracle", occlusion_oracle},
    {"se3_invariants", se3_invariants},         {"sampling_bounds", sampling_bounds},
    {"metric_correctness", metric_correctness}, {"loss_suite", loss_suite},
    {"baseline_sweep", baseline_sweep},         {"determinism_formats", determinism_formats},
    {"performance", performance},
};

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strncmp(argv[i], "--criterion=", 12) == 0) {
      only = argv[i] + 12;
    } else if (std::strcmp(argv[i], "--list") == 0) {
      for (const auto& c : kCriteria) std::printf("%s\n", c.name);
      return 0;
    } else {
      std::fprintf(stderr, "usage: %s [--criterion=<name>] [--list]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && only != c.name) continue;
    ++ran;
    Outcome o;
    try {
      c.fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
