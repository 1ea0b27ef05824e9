// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene4d/pipeline.hpp"

#include <png.h>

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "scene4d/io.hpp"
#include "scene4d/parallel.hpp"
#include "scene4d/synthscene.hpp"
#include "scene4d/train_support.hpp"

namespace scene4d {

namespace fs = std::filesystem;

namespace {

std::string fmt_index(const char* pattern, int i) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, i);
  return buf;
}

// Independent stream per (seed, scene, purpose).
Rng scene_rng(std::uint64_t seed, int scene, int stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(scene), static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

nlohmann::json matrix_json(const Mat4& m) {
  nlohmann::json a = nlohmann::json::array();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a.push_back(m(r, c));
  return a;
}

nlohmann::json delta_json(const PoseDelta& d) {
  return {{"d_azimuth_deg", d.d_azimuth_deg}, {"d_elevation_deg", d.d_elevation_deg}, {"d_radius_m", d.d_radius_m}};
}

std::string miou_mode_name(MiouMode m) { return m == MiouMode::Accumulate ? "accumulate" : "per_frame"; }

MiouMode parse_miou_mode(const std::string& s) {
  if (s == "accumulate") return MiouMode::Accumulate;
  if (s == "per_frame") return MiouMode::PerFrameAverage;
  throw ValidationError("unknown miou mode '" + s + "'");
}

Intrinsics output_intrinsics(const SceneManifest& m, const RunConfig& cfg) {
  if (m.cameras.empty()) throw ValidationError("scene '" + m.scene_id + "' has no cameras");
  return rescale_intrinsics(m.cameras.front().intrinsics, cfg.width, cfg.height);
}

void check_clip(const TrajectorySpec& spec, int frame_count) {
  if (spec.frames < 2) throw ValidationError("trajectory needs at least 2 frames");
  if (spec.clip.start_index < 0 || spec.clip.stride < 1)
    throw ValidationError("trajectory clip has an invalid start or stride");
  const int last = spec.clip.frame_index(spec.frames - 1);
  if (last >= frame_count)
    throw ValidationError("trajectory needs scene frame " + std::to_string(last) + " but the scene has " +
                          std::to_string(frame_count) + " frames");
}

void write_run(const fs::path& out, const std::vector<RenderedFrame>& frames, const TrajectorySpec& spec,
               const CameraTrajectory& traj, const nlohmann::json& provenance) {
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const int i = static_cast<int>(t);
    write_png_rgb(out / "rgb" / frame_filename(i, ".png"), frames[t].image);
    write_pfm(out / "depth" / frame_filename(i, ".pfm"), frames[t].depth);
    write_png_gray(out / "coverage" / frame_filename(i, ".png"), frames[t].coverage, 1);
    if (frames[t].labels) write_png_labels(out / "semantic" / frame_filename(i, ".png"), *frames[t].labels);
  }
  write_json(out / "trajectory.json", trajectory_to_json(spec));

  const auto bounds = SamplingBounds::preset(spec.preset);
  const Extrinsics e_src = pose_to_extrinsics(spec.source);
  const PoseDelta total = pose_delta(spec.source, spec.destination);
  nlohmann::json per_frame = nlohmann::json::array();
  for (std::size_t t = 0; t < traj.size(); ++t) {
    const PoseDelta d = pose_delta(spec.source, traj.poses[t]);
    per_frame.push_back({{"t", t},
                         {"source_frame", spec.clip.frame_index(static_cast<int>(t))},
                         {"delta", delta_json(d)},
                         {"relative_extrinsics", matrix_json(relative_extrinsics(e_src, traj.extrinsics[t]).matrix())},
                         {"motion_bucket", motion_bucket(d, bounds)}});
  }
  nlohmann::json cond = {{"preset", spec.preset},
                         {"mode", to_string(spec.mode)},
                         {"delta", delta_json(total)},
                         {"motion_bucket", motion_bucket(total, bounds)},
                         {"fourier_features", fourier_encode(total, bounds)},
                         {"frames", per_frame},
                         {"provenance", provenance}};
  write_json(out / "conditioning.json", cond);
}

VideoClip load_run_clip(const fs::path& run, int frames, Modality modality, const Intrinsics& k) {
  VideoClip clip;
  for (int t = 0; t < frames; ++t) {
    if (modality == Modality::Rgb) {
      const auto p = run / "rgb" / frame_filename(t, ".png");
      if (!fs::exists(p)) throw IoError("missing predicted frame '" + p.string() + "'");
      clip.rgb.push_back(read_png_rgb(p));
      if (clip.rgb.back().width != k.width || clip.rgb.back().height != k.height)
        throw ValidationError("resolution mismatch in '" + p.string() + "'");
    } else {
      const auto p = run / "semantic" / frame_filename(t, ".png");
      if (!fs::exists(p)) throw IoError("missing predicted frame '" + p.string() + "'");
      clip.labels.push_back(read_png_labels(p));
      if (clip.labels.back().width != k.width || clip.labels.back().height != k.height)
        throw ValidationError("resolution mismatch in '" + p.string() + "'");
    }
  }
  return clip;
}

std::vector<fs::path> find_runs(const fs::path& root) {
  if (fs::exists(root / "trajectory.json")) return {root};
  if (!fs::is_directory(root)) throw IoError("'" + root.string() + "' is not a directory");
  std::vector<fs::path> runs;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_directory() && fs::exists(e.path() / "trajectory.json")) runs.push_back(e.path());
  std::sort(runs.begin(), runs.end());
  if (runs.empty()) throw IoError("no runs (directories with trajectory.json) below '" + root.string() + "'");
  return runs;
}

}  // namespace

// ---------------------------------------------------------------------------------------

void RunConfig::validate() const {
  SamplingBounds::preset(preset);
  if (frames < 2) throw ValidationError("frames must be at least 2");
  if (width <= 0 || height <= 0) throw ValidationError("resolution must be positive");
  if (splat_radius && (*splat_radius < 0 || *splat_radius > 8))
    throw ValidationError("splat radius must be in [0, 8]");
  if (!(far_plane > 0.0)) throw ValidationError("far plane must be positive");
  if (samples_per_trajectory < 1 || trajectories_per_scene < 1)
    throw ValidationError("samples and trajectories per scene must be positive");
  if (jobs < 1) throw ValidationError("jobs must be at least 1");
  if (scene_count < 1 || scene_frames < 1 || camera_count < 1 || camera_count > 256)
    throw ValidationError("scene, frame and camera counts must be positive (at most 256 cameras)");
  if (ring_elevations.empty()) throw ValidationError("at least one camera ring is required");
  if (!(rig_radius > 0.0)) throw ValidationError("rig radius must be positive");
  if (min_spheres < 1 || max_spheres < min_spheres) throw ValidationError("invalid sphere count range");
}

RenderSettings RunConfig::render_settings(int default_radius) const {
  RenderSettings s;
  s.splat_radius = splat_radius.value_or(default_radius);
  s.far_clip = far_plane;
  s.validate();
  return s;
}

nlohmann::json run_config_to_json(const RunConfig& c) {
  nlohmann::json j = {{"seed", c.seed},
                      {"preset", c.preset},
                      {"mode", to_string(c.mode)},
                      {"frames", c.frames},
                      {"resolution", std::to_string(c.width) + "x" + std::to_string(c.height)},
                      {"splat_radius", nullptr},
                      {"far_plane", c.far_plane},
                      {"modality", to_string(c.modality)},
                      {"samples_per_trajectory", c.samples_per_trajectory},
                      {"trajectories_per_scene", c.trajectories_per_scene},
                      {"jobs", c.jobs},
                      {"write_masks", c.write_masks},
                      {"miou_mode", miou_mode_name(c.miou_mode)},
                      {"scene_count", c.scene_count},
                      {"scene_frames", c.scene_frames},
                      {"camera_count", c.camera_count},
                      {"rig_radius", c.rig_radius},
                      {"ring_elevations", c.ring_elevations},
                      {"min_spheres", c.min_spheres},
                      {"max_spheres", c.max_spheres}};
  if (c.splat_radius) j["splat_radius"] = *c.splat_radius;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig c) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "preset") c.preset = v.get<std::string>();
      else if (key == "mode") c.mode = parse_trajectory_mode(v.get<std::string>());
      else if (key == "frames") c.frames = v.get<int>();
      else if (key == "resolution") std::tie(c.width, c.height) = parse_resolution(v.get<std::string>());
      else if (key == "splat_radius") c.splat_radius = v.is_null() ? std::nullopt : std::optional<int>(v.get<int>());
      else if (key == "far_plane") c.far_plane = v.get<double>();
      else if (key == "modality") c.modality = parse_modality(v.get<std::string>());
      else if (key == "samples_per_trajectory") c.samples_per_trajectory = v.get<int>();
      else if (key == "trajectories_per_scene") c.trajectories_per_scene = v.get<int>();
      else if (key == "jobs") c.jobs = v.get<int>();
      else if (key == "write_masks") c.write_masks = v.get<bool>();
      else if (key == "miou_mode") c.miou_mode = parse_miou_mode(v.get<std::string>());
      else if (key == "scene_count") c.scene_count = v.get<int>();
      else if (key == "scene_frames") c.scene_frames = v.get<int>();
      else if (key == "camera_count") c.camera_count = v.get<int>();
      else if (key == "rig_radius") c.rig_radius = v.get<double>();
      else if (key == "ring_elevations") c.ring_elevations = v.get<std::vector<double>>();
      else if (key == "min_spheres") c.min_spheres = v.get<int>();
      else if (key == "max_spheres") c.max_spheres = v.get<int>();
      else throw ValidationError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string config_hash(const RunConfig& c) {
  auto j = run_config_to_json(c);
  j.erase("jobs");  // worker count never changes outputs
  return hex64(fnv1a64(j.dump()));
}

nlohmann::json provenance_block(const RunConfig& c, const std::string& command) {
  return {{"command", command},
          {"config_hash", config_hash(c)},
          {"seed", c.seed},
          {"versions",
           {{"scene4d", kVersion},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"libpng", PNG_LIBPNG_VER_STRING}}}};
}

std::pair<int, int> parse_resolution(const std::string& s) {
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos) throw ValidationError("resolution must look like WxH, got '" + s + "'");
  try {
    std::size_t a = 0, b = 0;
    const int w = std::stoi(s.substr(0, x), &a);
    const int h = std::stoi(s.substr(x + 1), &b);
    if (a != x || b != s.size() - x - 1 || w <= 0 || h <= 0) throw ValidationError("");
    return {w, h};
  } catch (const std::exception&) {
    throw ValidationError("resolution must look like WxH with positive sizes, got '" + s + "'");
  }
}

Intrinsics rescale_intrinsics(const Intrinsics& k, int width, int height) {
  if (k.width == width && k.height == height) return k;
  const double sx = static_cast<double>(width) / k.width;
  const double sy = static_cast<double>(height) / k.height;
  Intrinsics out{width, height, k.fx * sx, k.fy * sy, k.cx * sx, k.cy * sy};
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------------------

nlohmann::json cmd_synth(const fs::path& out_dir, const RunConfig& cfg) {
  cfg.validate();
  const auto bounds = SamplingBounds::preset(cfg.preset);
  const CameraRig rig = make_rig(cfg.camera_count, cfg.rig_radius, cfg.ring_elevations, cfg.width, cfg.height);
  const auto prov = provenance_block(cfg, "synth");

  std::vector<SceneManifest> manifests;
  for (int i = 0; i < cfg.scene_count; ++i) {
    Rng rng = scene_rng(cfg.seed, i, 0);
    SceneGenOptions opts;
    opts.min_spheres = cfg.min_spheres;
    opts.max_spheres = cfg.max_spheres;
    opts.frame_count = cfg.scene_frames;
    SceneManifest m;
    m.scene_id = fmt_index("scene_%04d", i);
    m.synthetic = generate_scene(rng, opts);
    m.frame_count = m.synthetic->frame_count;
    m.base_fps = m.synthetic->fps;
    m.modalities = {"rgb", "depth", "semantic"};
    m.far_plane = cfg.far_plane;
    for (std::size_t c = 0; c < rig.cameras.size(); ++c) {
      CameraEntry e;
      e.camera_id = fmt_index("%02d", static_cast<int>(c));
      e.intrinsics = rig.intrinsics;
      e.extrinsics.assign(m.frame_count, pose_to_extrinsics(rig.cameras[c]));
      m.cameras.push_back(std::move(e));
    }
    m.provenance = prov;
    m.validate();
    manifests.push_back(std::move(m));
  }

  const std::size_t frames = static_cast<std::size_t>(cfg.scene_frames);
  parallel_for(manifests.size() * frames, cfg.jobs, [&](std::size_t job) {
    const auto& m = manifests[job / frames];
    const int f = static_cast<int>(job % frames);
    const auto state = simulate(*m.synthetic, f);
    for (const auto& cam : m.cameras) {
      const ViewFrame v = render_analytic(state, *m.synthetic, cam.extrinsics[f], cam.intrinsics, f);
      save_view(out_dir / m.scene_id, cam.camera_id, f, v, m.modalities);
    }
  });

  nlohmann::json trajectories = nlohmann::json::array();
  nlohmann::json scenes = nlohmann::json::array();
  for (int i = 0; i < cfg.scene_count; ++i) {
    const auto& m = manifests[i];
    write_manifest(out_dir / m.scene_id, m);
    scenes.push_back({{"scene_id", m.scene_id}, {"spheres", m.synthetic->spheres.size()}});
    // Evaluation trajectories are fixed once here: one source pose at the evaluation
    // elevation per scene and one clip, with trajectories_per_scene destinations.
    Rng rng = scene_rng(cfg.seed, i, 1);
    const PoseDescription src = sample_source_pose(rng, bounds, kEvaluationSourceElevationDeg);
    const ClipSpec clip = sample_clip(rng, m.frame_count, ClipProfile::Kubric, cfg.frames);
    for (int k = 0; k < cfg.trajectories_per_scene; ++k) {
      TrajectorySpec spec;
      spec.mode = cfg.mode;
      spec.frames = cfg.frames;
      spec.source = src;
      spec.destination = sample_destination_pose(rng, src, bounds);
      spec.preset = cfg.preset;
      spec.seed = cfg.seed;
      spec.clip = clip;
      trajectories.push_back(
          {{"scene_id", m.scene_id}, {"name", fmt_index("traj_%d", k)}, {"trajectory", trajectory_to_json(spec)}});
    }
  }
  write_json(out_dir / "categories.json", categories_to_json(default_categories()));
  write_json(out_dir / "trajectories.json",
             {{"samples_per_trajectory", cfg.samples_per_trajectory}, {"trajectories", trajectories}, {"provenance", prov}});
  auto config = run_config_to_json(cfg);
  config.erase("jobs");
  write_json(out_dir / "config.json", config);
  return {{"scenes", scenes}, {"trajectories", trajectories.size()}, {"provenance", prov}};
}

nlohmann::json cmd_fuse(const fs::path& scene_dir, const RunConfig& cfg, std::optional<fs::path> out_dir) {
  cfg.validate();
  const SceneManifest m = read_manifest(scene_dir);
  if (!m.has_modality("depth")) throw ValidationError("scene '" + m.scene_id + "' has no depth modality");
  check_manifest_files(scene_dir, m);
  const fs::path out = out_dir.value_or(scene_dir / "fused");
  const FusionOptions fopts{cfg.far_plane};

  std::vector<std::size_t> counts(m.frame_count, 0);
  parallel_for(counts.size(), cfg.jobs, [&](std::size_t f) {
    std::vector<ViewFrame> views;
    for (std::size_t c = 0; c < m.cameras.size(); ++c) views.push_back(load_view(scene_dir, m, c, static_cast<int>(f)));
    FusedPointCloud cloud = fuse_frame(views, fopts);
    cloud.timestamp = static_cast<int>(f);
    write_point_cloud(out / frame_filename(static_cast<int>(f), ""), cloud, cfg.far_plane);
    counts[f] = cloud.size();
  });

  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  nlohmann::json summary = {{"scene_id", m.scene_id},
                            {"frames", m.frame_count},
                            {"point_counts", counts},
                            {"total_points", total},
                            {"provenance", provenance_block(cfg, "fuse")}};
  write_json(out / "fuse.json", summary);
  return summary;
}

nlohmann::json cmd_render(const fs::path& scene_dir, const TrajectorySpec& spec, const fs::path& out_dir,
                          const RunConfig& cfg) {
  cfg.validate();
  const SceneManifest m = read_manifest(scene_dir);
  check_clip(spec, m.frame_count);
  const CameraTrajectory traj = spec.build();
  if (static_cast<int>(traj.size()) != spec.frames) throw ValidationError("trajectory/frame-count mismatch");
  const Intrinsics k = output_intrinsics(m, cfg);
  const FusionOptions fopts{cfg.far_plane};

  std::vector<FusedPointCloud> clouds(traj.size());
  parallel_for(clouds.size(), cfg.jobs, [&](std::size_t t) {
    const int f = spec.clip.frame_index(static_cast<int>(t));
    const fs::path stem = scene_dir / "fused" / frame_filename(f, "");
    if (fs::exists(fs::path(stem).concat(".bin"))) {
      clouds[t] = read_point_cloud(stem);
    } else {
      std::vector<ViewFrame> views;
      for (std::size_t c = 0; c < m.cameras.size(); ++c) views.push_back(load_view(scene_dir, m, c, f));
      clouds[t] = fuse_frame(views, fopts);
      clouds[t].timestamp = f;
    }
  });

  const auto frames = render_trajectory(clouds, traj, k, cfg.render_settings(1), cfg.jobs);
  const auto prov = provenance_block(cfg, "render");
  write_run(out_dir, frames, spec, traj, prov);

  nlohmann::json coverage = nlohmann::json::array();
  for (const auto& fr : frames) coverage.push_back(fr.coverage_fraction());
  const auto bounds = SamplingBounds::preset(spec.preset);
  return {{"scene_id", m.scene_id},
          {"frames", frames.size()},
          {"coverage", coverage},
          {"motion_bucket", motion_bucket(pose_delta(spec.source, spec.destination), bounds)},
          {"provenance", prov}};
}

GroundTruth render_ground_truth(const SceneSpec& scene, const TrajectorySpec& spec, const Intrinsics& k, int jobs) {
  check_clip(spec, scene.frame_count);
  const CameraTrajectory traj = spec.build();
  const Extrinsics e_src = pose_to_extrinsics(spec.source);
  const std::size_t n = traj.size();
  GroundTruth gt;
  gt.target.rgb.resize(n);
  gt.target.labels.resize(n);
  gt.target_depth.resize(n);
  gt.source_depth.resize(n);
  gt.masks.resize(n);
  parallel_for(n, jobs, [&](std::size_t t) {
    const int f = spec.clip.frame_index(static_cast<int>(t));
    const auto state = simulate(scene, f);
    ViewFrame tv = render_analytic(state, scene, traj.extrinsics[t], k, f);
    ViewFrame sv = render_analytic(state, scene, e_src, k, f);
    gt.masks[t] = compute_occlusion_mask(tv.depth, Camera{k, traj.extrinsics[t]}, Camera{k, e_src}, sv.depth);
    gt.target.rgb[t] = std::move(tv.rgb);
    gt.target.labels[t] = std::move(*tv.semantic);
    gt.target_depth[t] = std::move(tv.depth);
    gt.source_depth[t] = std::move(sv.depth);
  });
  return gt;
}

nlohmann::json cmd_eval(const fs::path& pred_dir, const fs::path& scene_dir, const std::optional<TrajectorySpec>& traj,
                        const fs::path& report_path, const RunConfig& cfg, EvalOptions opts) {
  cfg.validate();
  const SceneManifest m = read_manifest(scene_dir);
  if (!m.synthetic)
    throw ValidationError("scene '" + m.scene_id + "' has no analytic description; ground truth at novel poses is unavailable");
  opts.miou_mode = cfg.miou_mode;
  const Intrinsics k = output_intrinsics(m, cfg);
  const auto runs = find_runs(pred_dir);

  std::vector<MetricsReport> reports(runs.size());
  parallel_for(runs.size(), cfg.jobs, [&](std::size_t i) {
    const fs::path& run = runs[i];
    const TrajectorySpec spec = traj ? *traj : trajectory_from_json(read_json(run / "trajectory.json"));
    const GroundTruth gt = render_ground_truth(*m.synthetic, spec, k);
    const VideoClip pred = load_run_clip(run, spec.frames, cfg.modality, k);
    if (cfg.write_masks)
      for (std::size_t t = 0; t < gt.masks.size(); ++t)
        write_png_gray(run / "masks" / frame_filename(static_cast<int>(t), ".png"), gt.masks[t], 2);
    reports[i] = evaluate_sequence(pred, gt.target, gt.masks, cfg.modality, opts);
    reports[i].metadata = {{"run", fs::relative(run, pred_dir).generic_string()}, {"scene_id", m.scene_id}};
  });

  nlohmann::json j;
  if (reports.size() == 1) {
    j = report_to_json(reports.front());
  } else {
    j = report_to_json(aggregate_reports(reports, opts));
    nlohmann::json per_run = nlohmann::json::array();
    for (const auto& r : reports) per_run.push_back(report_to_json(r));
    j["runs"] = per_run;
  }
  j["modality"] = to_string(cfg.modality);
  j["run_count"] = reports.size();
  j["occluded_split"] = opts.occluded_split;
  j["provenance"] = provenance_block(cfg, "eval");
  write_json(report_path, j);
  return j;
}

nlohmann::json cmd_baseline(const fs::path& scene_dir, const TrajectorySpec& spec, const fs::path& out_dir,
                            const RunConfig& cfg) {
  cfg.validate();
  const SceneManifest m = read_manifest(scene_dir);
  check_clip(spec, m.frame_count);
  const CameraTrajectory traj = spec.build();
  const Intrinsics k = output_intrinsics(m, cfg);
  const Extrinsics e_src = pose_to_extrinsics(spec.source);

  // Input video: the source camera over the clip frames, with ground-truth depth.
  std::vector<ViewFrame> views(traj.size());
  std::optional<std::size_t> recorded;
  if (!m.synthetic) {
    for (std::size_t c = 0; c < m.cameras.size() && !recorded; ++c)
      if ((m.cameras[c].extrinsics[spec.clip.start_index].matrix() - e_src.matrix()).cwiseAbs().maxCoeff() < 1e-6)
        recorded = c;
    if (!recorded) throw ValidationError("no recorded camera matches the trajectory source pose");
  }
  parallel_for(views.size(), cfg.jobs, [&](std::size_t t) {
    const int f = spec.clip.frame_index(static_cast<int>(t));
    views[t] = m.synthetic ? render_analytic(simulate(*m.synthetic, f), *m.synthetic, e_src, k, f)
                           : load_view(scene_dir, m, *recorded, f);
  });

  BaselineOptions bopts;
  bopts.jobs = cfg.jobs;
  const auto frames = reproject_baseline(views, traj, views.front().intrinsics, cfg.render_settings(0),
                                         cfg.modality, bopts);
  const auto prov = provenance_block(cfg, "baseline");
  write_run(out_dir, frames, spec, traj, prov);

  nlohmann::json coverage = nlohmann::json::array();
  double mean_cov = 0.0;
  for (std::size_t t = 1; t < frames.size(); ++t) {
    coverage.push_back(frames[t].coverage_fraction());
    mean_cov += frames[t].coverage_fraction();
  }
  mean_cov /= static_cast<double>(frames.size() - 1);

  nlohmann::json j;
  if (m.synthetic) {
    EvalOptions opts;
    opts.occluded_split = false;
    j = cmd_eval(out_dir, scene_dir, spec, out_dir / "report.json", cfg, opts);
  } else {
    j = {{"note", "no ground truth at novel poses for recorded scenes"}};
  }
  j["method"] = cfg.modality == Modality::Rgb ? "reproject_rgbd" : "reproject_semd";
  j["coverage_per_frame"] = coverage;
  j["coverage_fraction"] = mean_cov;
  j["provenance"] = prov;
  write_json(out_dir / "report.json", j);
  return j;
}

double baseline_final_frame_psnr(const SceneSpec& scene, double angle_deg, const RunConfig& cfg) {
  const PoseDescription src{0.0, 10.0, 15.0, default_look_at()};
  const PoseDescription dst{wrap_degrees_positive(angle_deg), 10.0, 15.0, default_look_at()};
  const CameraTrajectory traj = build_gradual(src, dst, cfg.frames);
  const int f = std::min(cfg.frames - 1, scene.frame_count - 1);
  const Intrinsics k = default_rig(cfg.width, cfg.height).intrinsics;
  const auto state = simulate(scene, f);

  const ViewFrame input = render_analytic(state, scene, traj.extrinsics.front(), k, f);
  const FusedPointCloud cloud = unproject_view(input, 0, FusionOptions{cfg.far_plane});
  const Extrinsics& e_dst = traj.extrinsics.back();
  const RenderedFrame out = render_points(cloud, Camera{k, e_dst}, cfg.render_settings(0));
  const ViewFrame gt = render_analytic(state, scene, e_dst, k, f);

  BoolMap valid(k.width, k.height, 1);
  for (std::size_t i = 0; i < gt.depth.data.size(); ++i) valid.data[i] = depth_valid(gt.depth.data[i]) ? 1 : 0;
  return psnr(out.image, gt.rgb, &valid);
}

std::vector<SweepRow> cmd_sweep(const fs::path& dataset_dir, const std::vector<double>& angles_deg,
                                const fs::path& csv_path, const RunConfig& cfg) {
  cfg.validate();
  if (angles_deg.empty()) throw ValidationError("sweep needs at least one angle");
  std::vector<SceneSpec> scenes;
  for (const auto& dir : find_scenes(dataset_dir)) {
    const auto m = read_manifest(dir);
    if (m.synthetic) scenes.push_back(*m.synthetic);
  }
  if (scenes.empty()) throw ValidationError("no generated scenes below '" + dataset_dir.string() + "'");

  const std::size_t na = angles_deg.size();
  std::vector<double> table(scenes.size() * na);
  parallel_for(table.size(), cfg.jobs, [&](std::size_t i) {
    table[i] = baseline_final_frame_psnr(scenes[i / na], angles_deg[i % na], cfg);
  });
  std::map<double, std::size_t> angle_index;
  for (std::size_t a = 0; a < na; ++a) angle_index.emplace(angles_deg[a], a);
  const auto rows = rotation_sweep(scenes.size(), angles_deg, [&](std::size_t s, double angle) {
    return table[s * na + angle_index.at(angle)];
  });
  write_text_atomic(csv_path, sweep_to_csv(rows));
  return rows;
}

std::vector<double> parse_angles(const std::string& s) {
  std::vector<double> out;
  try {
    if (s.find(':') != std::string::npos) {
      std::stringstream ss(s);
      std::string a, b, c;
      std::getline(ss, a, ':');
      std::getline(ss, b, ':');
      std::getline(ss, c, ':');
      const double lo = std::stod(a), hi = std::stod(b), step = std::stod(c);
      if (!(step > 0.0) || hi < lo) throw ValidationError("");
      const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
      for (long i = 0; i <= n; ++i) out.push_back(lo + step * static_cast<double>(i));
    } else {
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    }
  } catch (const std::exception&) {
    throw ValidationError("angles must be 'a,b,c' or 'start:stop:step', got '" + s + "'");
  }
  if (out.empty()) throw ValidationError("no angles in '" + s + "'");
  return out;
}

}  // namespace scene4d
