// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// Occlusion-aware evaluation: visibility masks from ground-truth source depth, PSNR,
// SSIM and mIoU, and per-sequence reports that skip frame 0.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "scene4d/camera.hpp"
#include "scene4d/image.hpp"
#include "scene4d/pointcloud.hpp"
#include "scene4d/splat.hpp"

namespace scene4d {

enum class Visibility : std::uint8_t { Visible = 0, Occluded = 1, OutOfView = 2, NoData = 3 };

/// Per-pixel Visibility values; storable as a 2-bit PNG.
using OcclusionMask = Plane<std::uint8_t>;

struct OcclusionSettings {
  /// Occluded when z_src(X) > D_src * (1 + relative_tolerance) + absolute_tolerance.
  double relative_tolerance = 1e-3;
  double absolute_tolerance = 0.05;
};

OcclusionMask compute_occlusion_mask(const DepthMap& target_depth, const Camera& target,
                                     const Camera& source, const DepthMap& source_depth,
                                     const OcclusionSettings& settings = {});
OcclusionMask compute_occlusion_mask(const ViewFrame& target_view, const Camera& source,
                                     const DepthMap& source_depth,
                                     const OcclusionSettings& settings = {});

/// Pixels selected for the "occluded" split: occluded or out of view.
BoolMap occluded_selection(const OcclusionMask& mask);
/// Pixels with ground truth (anything but NoData).
BoolMap valid_selection(const OcclusionMask& mask);

inline constexpr double kPsnrCap = 100.0;

/// 10 log10(1 / MSE) over the selected pixels (all channels); kPsnrCap when MSE is 0.
double psnr(const ImageRGB& pred, const ImageRGB& gt, const BoolMap* mask = nullptr);

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double data_range = 1.0;
};

/// Rec. 601 luma of an RGB image; single-channel images are copied.
Plane<double> to_luma(const ImageRGB& img);
/// Per-pixel SSIM map on luma with a Gaussian window and symmetric border extension.
Plane<double> ssim_map(const ImageRGB& pred, const ImageRGB& gt, const SsimParams& p = {});
/// Mean of the SSIM map over selected pixels, excluding a (window - 1) / 2 border.
double ssim(const ImageRGB& pred, const ImageRGB& gt, const BoolMap* mask = nullptr,
            const SsimParams& p = {});

/// Intersection/union counts per category, accumulated over frames and scenes.
class IouAccumulator {
 public:
  struct Counts {
    std::uint64_t intersection = 0;
    std::uint64_t union_ = 0;
    std::uint64_t gt_pixels = 0;
  };

  /// Pixels with gt == ignore_label (or outside `mask`) are skipped.
  void add(const LabelMap& pred, const LabelMap& gt, const BoolMap* mask = nullptr,
           std::uint16_t ignore_label = kVoidLabel);
  void merge(const IouAccumulator& other);

  std::optional<double> iou(std::uint16_t category) const;
  /// The k categories with the most ground-truth pixels (ties by lower id).
  std::vector<std::uint16_t> top_categories(std::size_t k) const;
  /// Unweighted mean IoU over `categories`; throws on an empty set.
  double mean_iou(const std::vector<std::uint16_t>& categories) const;
  bool empty() const { return counts_.empty(); }

  const std::map<std::uint16_t, Counts>& counts() const { return counts_; }
  Counts& counts_for(std::uint16_t c) { return counts_[c]; }

  nlohmann::json to_json() const;
  static IouAccumulator from_json(const nlohmann::json& j);

 private:
  std::map<std::uint16_t, Counts> counts_;
};

enum class MiouMode { Accumulate, PerFrameAverage };

struct VideoClip {
  std::vector<ImageRGB> rgb;
  std::vector<LabelMap> labels;
};

struct FrameMetrics {
  int frame = -1;
  std::optional<double> psnr_all, ssim_all, psnr_occ, ssim_occ, miou_all, miou_occ;
};

struct EvalOptions {
  /// Restrict frame metrics to the last frame (direct vs gradual comparisons).
  bool last_frame_only = false;
  /// Compute the "occ." split (off for methods reported on "all" only).
  bool occluded_split = true;
  std::size_t top_k = 10;
  /// Fixed mIoU categories; empty selects the top_k most common ground-truth categories.
  std::vector<std::uint16_t> categories;
  MiouMode miou_mode = MiouMode::Accumulate;
};

struct MetricsReport {
  std::vector<FrameMetrics> per_frame;
  FrameMetrics aggregate;
  IouAccumulator iou_all;
  IouAccumulator iou_occ;
  /// Per-frame mIoU values for the per-frame-average mode.
  std::vector<double> frame_miou_all, frame_miou_occ;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Metrics on frames 1..T-1 (frame 0 is never read). `masks` may be empty, in which case
/// every pixel counts as valid and the occluded split is skipped.
MetricsReport evaluate_sequence(const VideoClip& pred, const VideoClip& gt,
                                std::span<const OcclusionMask> masks, Modality modality,
                                const EvalOptions& opts = {});

/// Mean over reports of their aggregates; mIoU is recomputed from merged counts.
MetricsReport aggregate_reports(std::span<const MetricsReport> reports, const EvalOptions& opts = {});

nlohmann::json report_to_json(const MetricsReport& r);
MetricsReport report_from_json(const nlohmann::json& j);

struct SweepRow {
  double angle_deg = 0.0;
  double psnr_last_frame = 0.0;
};

/// Final-frame PSNR of `evaluator(scene, angle)` averaged over scenes, per angle.
std::vector<SweepRow> rotation_sweep(std::size_t scene_count, std::span<const double> angles_deg,
                                     const std::function<double(std::size_t, double)>& evaluator);
/// "angle_deg,psnr_last_frame" followed by one row per angle.
std::string sweep_to_csv(std::span<const SweepRow> rows);

}  // namespace scene4d
