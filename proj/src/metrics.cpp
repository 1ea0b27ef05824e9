// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene4d/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace scene4d {

// ---------------------------------------------------------------------------
// Occlusion masks

namespace {

// Source depth at continuous pixel (u, v): the nearest pixel's depth, corrected to first
// order with the local inverse-depth gradient. The gradient is only used where three
// consecutive samples agree on it (a smooth surface), so depths are never mixed across
// silhouettes. Inverse depth is affine in the image for planes, so planes are exact.
double source_depth_at(const DepthMap& depth, double u, double v) {
  const int i = static_cast<int>(u), j = static_cast<int>(v);
  const double d0 = depth.at(i, j);
  if (!depth_valid(d0)) return d0;
  const double c = 1.0 / d0;
  auto inv = [&](int x, int y) -> std::optional<double> {
    if (x < 0 || y < 0 || x >= depth.width || y >= depth.height) return std::nullopt;
    const double d = depth.at(x, y);
    if (!depth_valid(d)) return std::nullopt;
    return 1.0 / d;
  };
  auto agree = [&](double a, double b) { return std::abs(a - b) <= 0.25 * std::max(std::abs(a), std::abs(b)) + 1e-6 * c; };
  // Gradient along (dx, dy); `offset` is the signed sub-pixel offset of the query.
  auto gradient = [&](int dx, int dy, double offset) -> double {
    const auto m1 = inv(i - dx, j - dy), p1 = inv(i + dx, j + dy);
    if (m1 && p1 && agree(c - *m1, *p1 - c)) return 0.5 * (*p1 - *m1);
    const int s = offset >= 0.0 ? 1 : -1;
    for (int side : {s, -s}) {
      const auto n1 = inv(i + side * dx, j + side * dy), n2 = inv(i + 2 * side * dx, j + 2 * side * dy);
      if (n1 && n2 && agree(*n1 - c, *n2 - *n1)) return side * (*n1 - c);
    }
    return 0.0;
  };
  const double du = u - (i + 0.5), dv = v - (j + 0.5);
  const double est = c + gradient(1, 0, du) * du + gradient(0, 1, dv) * dv;
  return est > 0.0 ? 1.0 / est : d0;
}

}  // namespace

OcclusionMask compute_occlusion_mask(const DepthMap& target_depth, const Camera& target,
                                     const Camera& source, const DepthMap& source_depth,
                                     const OcclusionSettings& settings) {
  const Intrinsics& tk = target.intrinsics;
  const Intrinsics& sk = source.intrinsics;
  tk.validate();
  sk.validate();
  if (!target_depth.same_shape(tk.width, tk.height) || !source_depth.same_shape(sk.width, sk.height))
    throw ValidationError("occlusion mask: depth maps do not match their intrinsics");

  const Mat3 t_rot = target.extrinsics.rotation();
  const Vec3 t_pos = target.extrinsics.translation();
  const Mat3 s_rot_t = source.extrinsics.rotation().transpose();
  const Vec3 s_pos = source.extrinsics.translation();

  OcclusionMask mask(tk.width, tk.height, 1, static_cast<std::uint8_t>(Visibility::NoData));
  for (int y = 0; y < tk.height; ++y) {
    for (int x = 0; x < tk.width; ++x) {
      const double d = target_depth.at(x, y);
      if (!depth_valid(d) || !std::isfinite(d)) continue;
      const Vec3 world = t_rot * unproject_pixel(tk, x + 0.5, y + 0.5, d) + t_pos;
      const Vec3 p = s_rot_t * (world - s_pos);
      Visibility vis = Visibility::OutOfView;
      if (p.z() > 0.0) {
        const double u = sk.fx * p.x() / p.z() + sk.cx;
        const double v = sk.fy * p.y() / p.z() + sk.cy;
        if (u >= 0.0 && u < sk.width && v >= 0.0 && v < sk.height) {
          const double d_src = source_depth_at(source_depth, u, v);
          const bool hidden = p.z() > d_src * (1.0 + settings.relative_tolerance) + settings.absolute_tolerance;
          vis = hidden ? Visibility::Occluded : Visibility::Visible;
        }
      }
      mask.at(x, y) = static_cast<std::uint8_t>(vis);
    }
  }
  return mask;
}

OcclusionMask compute_occlusion_mask(const ViewFrame& target_view, const Camera& source,
                                     const DepthMap& source_depth, const OcclusionSettings& settings) {
  return compute_occlusion_mask(target_view.depth, Camera{target_view.intrinsics, target_view.extrinsics},
                                source, source_depth, settings);
}

BoolMap occluded_selection(const OcclusionMask& mask) {
  BoolMap sel(mask.width, mask.height, 1, 0);
  for (std::size_t i = 0; i < mask.data.size(); ++i) {
    const auto v = static_cast<Visibility>(mask.data[i]);
    sel.data[i] = (v == Visibility::Occluded || v == Visibility::OutOfView) ? 1 : 0;
  }
  return sel;
}

BoolMap valid_selection(const OcclusionMask& mask) {
  BoolMap sel(mask.width, mask.height, 1, 0);
  for (std::size_t i = 0; i < mask.data.size(); ++i)
    sel.data[i] = static_cast<Visibility>(mask.data[i]) != Visibility::NoData ? 1 : 0;
  return sel;
}

// ---------------------------------------------------------------------------
// PSNR / SSIM

namespace {

void check_pair(const ImageRGB& a, const ImageRGB& b, const BoolMap* mask) {
  if (a.width != b.width || a.height != b.height || a.channels != b.channels)
    throw ValidationError("metric: image shapes differ");
  if (mask && !mask->same_shape(a)) throw ValidationError("metric: mask shape differs from image");
}

std::size_t selected_count(const BoolMap& m) {
  return static_cast<std::size_t>(std::count_if(m.data.begin(), m.data.end(), [](auto v) { return v != 0; }));
}

}  // namespace

double psnr(const ImageRGB& pred, const ImageRGB& gt, const BoolMap* mask) {
  check_pair(pred, gt, mask);
  double sum = 0.0;
  std::size_t n = 0;
  const int ch = gt.channels;
  for (std::size_t i = 0; i < gt.pixel_count(); ++i) {
    if (mask && !mask->data[i]) continue;
    for (int c = 0; c < ch; ++c) {
      const double d = static_cast<double>(pred.data[i * ch + c]) - gt.data[i * ch + c];
      sum += d * d;
    }
    n += ch;
  }
  if (n == 0) throw ValidationError("psnr: mask selects no pixels");
  const double mse = sum / static_cast<double>(n);
  if (mse == 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

Plane<double> to_luma(const ImageRGB& img) {
  Plane<double> out(img.width, img.height, 1);
  if (img.channels == 1) {
    std::copy(img.data.begin(), img.data.end(), out.data.begin());
    return out;
  }
  if (img.channels < 3) throw ValidationError("to_luma: expected 1 or 3 channels");
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const float* p = img.data.data() + i * img.channels;
    out.data[i] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
  }
  return out;
}

namespace {

int reflect_index(int i, int n) {
  // Half-sample symmetric extension: d c b a | a b c d | d c b a
  for (;;) {
    if (i < 0) i = -i - 1;
    else if (i >= n) i = 2 * n - i - 1;
    else return i;
  }
}

std::vector<double> gaussian_kernel(int window, double sigma) {
  std::vector<double> k(window);
  const int r = window / 2;
  double sum = 0.0;
  for (int i = 0; i < window; ++i) {
    const double x = i - r;
    k[i] = std::exp(-0.5 * x * x / (sigma * sigma));
    sum += k[i];
  }
  for (auto& v : k) v /= sum;
  return k;
}

Plane<double> separable_filter(const Plane<double>& in, const std::vector<double>& k) {
  const int w = in.width, h = in.height, r = static_cast<int>(k.size()) / 2;
  Plane<double> tmp(w, h, 1), out(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = -r; i <= r; ++i) s += k[i + r] * in.at(reflect_index(x + i, w), y);
      tmp.at(x, y) = s;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = -r; i <= r; ++i) s += k[i + r] * tmp.at(x, reflect_index(y + i, h));
      out.at(x, y) = s;
    }
  return out;
}

}  // namespace

Plane<double> ssim_map(const ImageRGB& pred, const ImageRGB& gt, const SsimParams& p) {
  check_pair(pred, gt, nullptr);
  if (p.window < 1 || p.window % 2 == 0) throw ValidationError("ssim: window must be odd");
  if (gt.width < p.window || gt.height < p.window) throw ValidationError("ssim: image smaller than window");
  const Plane<double> x = to_luma(pred);
  const Plane<double> y = to_luma(gt);
  Plane<double> xx(x.width, x.height, 1), yy = xx, xy = xx;
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    xx.data[i] = x.data[i] * x.data[i];
    yy.data[i] = y.data[i] * y.data[i];
    xy.data[i] = x.data[i] * y.data[i];
  }
  const auto k = gaussian_kernel(p.window, p.sigma);
  const auto ux = separable_filter(x, k), uy = separable_filter(y, k);
  const auto uxx = separable_filter(xx, k), uyy = separable_filter(yy, k), uxy = separable_filter(xy, k);
  const double c1 = (p.k1 * p.data_range) * (p.k1 * p.data_range);
  const double c2 = (p.k2 * p.data_range) * (p.k2 * p.data_range);
  Plane<double> s(x.width, x.height, 1);
  for (std::size_t i = 0; i < s.data.size(); ++i) {
    const double mx = ux.data[i], my = uy.data[i];
    const double vx = uxx.data[i] - mx * mx;
    const double vy = uyy.data[i] - my * my;
    const double vxy = uxy.data[i] - mx * my;
    s.data[i] = ((2.0 * mx * my + c1) * (2.0 * vxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
  }
  return s;
}

double ssim(const ImageRGB& pred, const ImageRGB& gt, const BoolMap* mask, const SsimParams& p) {
  check_pair(pred, gt, mask);
  const auto s = ssim_map(pred, gt, p);
  const int pad = (p.window - 1) / 2;
  double sum = 0.0;
  std::size_t n = 0;
  for (int y = pad; y < s.height - pad; ++y)
    for (int x = pad; x < s.width - pad; ++x) {
      if (mask && !mask->at(x, y)) continue;
      sum += s.at(x, y);
      ++n;
    }
  if (n == 0) throw ValidationError("ssim: mask selects no interior pixels");
  return sum / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// mIoU

void IouAccumulator::add(const LabelMap& pred, const LabelMap& gt, const BoolMap* mask,
                         std::uint16_t ignore_label) {
  if (!pred.same_shape(gt)) throw ValidationError("miou: label map shapes differ");
  if (mask && !mask->same_shape(gt)) throw ValidationError("miou: mask shape differs");
  for (std::size_t i = 0; i < gt.data.size(); ++i) {
    if (mask && !mask->data[i]) continue;
    const std::uint16_t g = gt.data[i];
    if (g == ignore_label) continue;
    const std::uint16_t q = pred.data[i];
    auto& cg = counts_[g];
    cg.gt_pixels += 1;
    cg.union_ += 1;
    if (q == g) {
      cg.intersection += 1;
    } else if (q != ignore_label) {
      counts_[q].union_ += 1;
    }
  }
}

void IouAccumulator::merge(const IouAccumulator& other) {
  for (const auto& [c, o] : other.counts_) {
    auto& m = counts_[c];
    m.intersection += o.intersection;
    m.union_ += o.union_;
    m.gt_pixels += o.gt_pixels;
  }
}

std::optional<double> IouAccumulator::iou(std::uint16_t category) const {
  const auto it = counts_.find(category);
  if (it == counts_.end() || it->second.union_ == 0) return std::nullopt;
  return static_cast<double>(it->second.intersection) / static_cast<double>(it->second.union_);
}

std::vector<std::uint16_t> IouAccumulator::top_categories(std::size_t k) const {
  std::vector<std::pair<std::uint64_t, std::uint16_t>> ranked;
  for (const auto& [c, n] : counts_)
    if (n.gt_pixels > 0) ranked.emplace_back(n.gt_pixels, c);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::uint16_t> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(ranked[i].second);
  return out;
}

double IouAccumulator::mean_iou(const std::vector<std::uint16_t>& categories) const {
  if (categories.empty()) throw ValidationError("miou: empty category set");
  double sum = 0.0;
  std::size_t n = 0;
  for (auto c : categories) {
    if (const auto v = iou(c)) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) throw ValidationError("miou: no category has a defined IoU");
  return sum / static_cast<double>(n);
}

nlohmann::json IouAccumulator::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [c, n] : counts_)
    j[std::to_string(c)] = {{"intersection", n.intersection}, {"union", n.union_}, {"gt_pixels", n.gt_pixels}};
  return j;
}

IouAccumulator IouAccumulator::from_json(const nlohmann::json& j) {
  IouAccumulator acc;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto& n = acc.counts_[static_cast<std::uint16_t>(std::stoi(it.key()))];
    n.intersection = it.value().at("intersection").get<std::uint64_t>();
    n.union_ = it.value().at("union").get<std::uint64_t>();
    n.gt_pixels = it.value().at("gt_pixels").get<std::uint64_t>();
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Sequences

namespace {

std::optional<double> mean_of(const std::vector<FrameMetrics>& frames,
                              std::optional<double> FrameMetrics::*field) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& f : frames)
    if (const auto& v = f.*field) {
      sum += *v;
      ++n;
    }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> mean_vec(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<std::uint16_t> pick_categories(const IouAccumulator& acc, const EvalOptions& opts) {
  return opts.categories.empty() ? acc.top_categories(opts.top_k) : opts.categories;
}

std::optional<double> safe_miou(const IouAccumulator& acc, const std::vector<std::uint16_t>& cats) {
  if (cats.empty()) return std::nullopt;
  try {
    return acc.mean_iou(cats);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

template <typename Fn>
std::optional<double> if_any(const BoolMap* sel, Fn&& fn) {
  if (sel && selected_count(*sel) == 0) return std::nullopt;
  try {
    return fn();
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

void fill_aggregate(MetricsReport& r, Modality modality, const EvalOptions& opts) {
  r.aggregate = FrameMetrics{};
  if (modality == Modality::Rgb) {
    r.aggregate.psnr_all = mean_of(r.per_frame, &FrameMetrics::psnr_all);
    r.aggregate.ssim_all = mean_of(r.per_frame, &FrameMetrics::ssim_all);
    r.aggregate.psnr_occ = mean_of(r.per_frame, &FrameMetrics::psnr_occ);
    r.aggregate.ssim_occ = mean_of(r.per_frame, &FrameMetrics::ssim_occ);
  } else if (opts.miou_mode == MiouMode::Accumulate) {
    const auto cats = pick_categories(r.iou_all, opts);
    r.aggregate.miou_all = safe_miou(r.iou_all, cats);
    r.aggregate.miou_occ = safe_miou(r.iou_occ, cats);
  } else {
    r.aggregate.miou_all = mean_vec(r.frame_miou_all);
    r.aggregate.miou_occ = mean_vec(r.frame_miou_occ);
  }
}

}  // namespace

MetricsReport evaluate_sequence(const VideoClip& pred, const VideoClip& gt,
                                std::span<const OcclusionMask> masks, Modality modality,
                                const EvalOptions& opts) {
  const bool rgb = modality == Modality::Rgb;
  const std::size_t t_frames = rgb ? gt.rgb.size() : gt.labels.size();
  const std::size_t pred_frames = rgb ? pred.rgb.size() : pred.labels.size();
  if (pred_frames != t_frames) throw ValidationError("evaluate_sequence: length mismatch");
  if (t_frames < 2) throw ValidationError("evaluate_sequence: need at least 2 frames");
  if (!masks.empty() && masks.size() != t_frames)
    throw ValidationError("evaluate_sequence: mask count does not match frame count");

  MetricsReport report;
  const std::size_t first = opts.last_frame_only ? t_frames - 1 : 1;
  for (std::size_t f = first; f < t_frames; ++f) {
    FrameMetrics m;
    m.frame = static_cast<int>(f);
    std::optional<BoolMap> all_sel, occ_sel;
    if (!masks.empty()) {
      all_sel = valid_selection(masks[f]);
      if (opts.occluded_split) occ_sel = occluded_selection(masks[f]);
    }
    const BoolMap* all_ptr = all_sel ? &*all_sel : nullptr;
    const BoolMap* occ_ptr = occ_sel ? &*occ_sel : nullptr;
    if (rgb) {
      m.psnr_all = if_any(all_ptr, [&] { return psnr(pred.rgb[f], gt.rgb[f], all_ptr); });
      m.ssim_all = if_any(all_ptr, [&] { return ssim(pred.rgb[f], gt.rgb[f], all_ptr); });
      if (occ_ptr) {
        m.psnr_occ = if_any(occ_ptr, [&] { return psnr(pred.rgb[f], gt.rgb[f], occ_ptr); });
        m.ssim_occ = if_any(occ_ptr, [&] { return ssim(pred.rgb[f], gt.rgb[f], occ_ptr); });
      }
    } else {
      IouAccumulator frame_all;
      frame_all.add(pred.labels[f], gt.labels[f], all_ptr);
      const auto cats = pick_categories(frame_all, opts);
      m.miou_all = safe_miou(frame_all, cats);
      report.iou_all.merge(frame_all);
      if (m.miou_all) report.frame_miou_all.push_back(*m.miou_all);
      if (occ_ptr) {
        IouAccumulator frame_occ;
        frame_occ.add(pred.labels[f], gt.labels[f], occ_ptr);
        m.miou_occ = safe_miou(frame_occ, cats);
        report.iou_occ.merge(frame_occ);
        if (m.miou_occ) report.frame_miou_occ.push_back(*m.miou_occ);
      }
    }
    report.per_frame.push_back(m);
  }
  fill_aggregate(report, modality, opts);
  report.metadata["modality"] = to_string(modality);
  report.metadata["frames"] = t_frames;
  return report;
}

MetricsReport aggregate_reports(std::span<const MetricsReport> reports, const EvalOptions& opts) {
  MetricsReport out;
  if (reports.empty()) throw ValidationError("aggregate_reports: no reports");
  std::vector<FrameMetrics> aggs;
  for (const auto& r : reports) {
    aggs.push_back(r.aggregate);
    out.iou_all.merge(r.iou_all);
    out.iou_occ.merge(r.iou_occ);
    out.frame_miou_all.insert(out.frame_miou_all.end(), r.frame_miou_all.begin(), r.frame_miou_all.end());
    out.frame_miou_occ.insert(out.frame_miou_occ.end(), r.frame_miou_occ.begin(), r.frame_miou_occ.end());
  }
  out.aggregate.psnr_all = mean_of(aggs, &FrameMetrics::psnr_all);
  out.aggregate.ssim_all = mean_of(aggs, &FrameMetrics::ssim_all);
  out.aggregate.psnr_occ = mean_of(aggs, &FrameMetrics::psnr_occ);
  out.aggregate.ssim_occ = mean_of(aggs, &FrameMetrics::ssim_occ);
  if (!out.iou_all.empty()) {
    if (opts.miou_mode == MiouMode::Accumulate) {
      const auto cats = pick_categories(out.iou_all, opts);
      out.aggregate.miou_all = safe_miou(out.iou_all, cats);
      out.aggregate.miou_occ = safe_miou(out.iou_occ, cats);
    } else {
      out.aggregate.miou_all = mean_vec(out.frame_miou_all);
      out.aggregate.miou_occ = mean_vec(out.frame_miou_occ);
    }
  }
  out.metadata["reports"] = reports.size();
  return out;
}

namespace {

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::optional<double> opt_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

nlohmann::json frame_json(const FrameMetrics& f) {
  nlohmann::json j = {{"psnr_all", opt_json(f.psnr_all)}, {"ssim_all", opt_json(f.ssim_all)},
                      {"psnr_occ", opt_json(f.psnr_occ)}, {"ssim_occ", opt_json(f.ssim_occ)},
                      {"miou_all", opt_json(f.miou_all)}, {"miou_occ", opt_json(f.miou_occ)}};
  if (f.frame >= 0) j["frame"] = f.frame;
  return j;
}

FrameMetrics frame_from(const nlohmann::json& j) {
  FrameMetrics f;
  f.frame = j.value("frame", -1);
  f.psnr_all = opt_from(j, "psnr_all");
  f.ssim_all = opt_from(j, "ssim_all");
  f.psnr_occ = opt_from(j, "psnr_occ");
  f.ssim_occ = opt_from(j, "ssim_occ");
  f.miou_all = opt_from(j, "miou_all");
  f.miou_occ = opt_from(j, "miou_occ");
  return f;
}

}  // namespace

nlohmann::json report_to_json(const MetricsReport& r) {
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& f : r.per_frame) frames.push_back(frame_json(f));
  return {{"per_frame", frames},
          {"aggregate", frame_json(r.aggregate)},
          {"lpips_all", nullptr},
          {"iou_counts", {{"all", r.iou_all.to_json()}, {"occ", r.iou_occ.to_json()}}},
          {"frame_miou", {{"all", r.frame_miou_all}, {"occ", r.frame_miou_occ}}},
          {"metadata", r.metadata}};
}

MetricsReport report_from_json(const nlohmann::json& j) {
  try {
    MetricsReport r;
    for (const auto& f : j.at("per_frame")) r.per_frame.push_back(frame_from(f));
    r.aggregate = frame_from(j.at("aggregate"));
    if (j.contains("iou_counts")) {
      r.iou_all = IouAccumulator::from_json(j.at("iou_counts").at("all"));
      r.iou_occ = IouAccumulator::from_json(j.at("iou_counts").at("occ"));
    }
    if (j.contains("frame_miou")) {
      r.frame_miou_all = j.at("frame_miou").at("all").get<std::vector<double>>();
      r.frame_miou_occ = j.at("frame_miou").at("occ").get<std::vector<double>>();
    }
    r.metadata = j.value("metadata", nlohmann::json::object());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("report json: ") + e.what());
  }
}

std::vector<SweepRow> rotation_sweep(std::size_t scene_count, std::span<const double> angles_deg,
                                     const std::function<double(std::size_t, double)>& evaluator) {
  if (scene_count == 0) throw ValidationError("rotation_sweep: no scenes");
  std::vector<SweepRow> rows;
  rows.reserve(angles_deg.size());
  for (double angle : angles_deg) {
    double sum = 0.0;
    for (std::size_t s = 0; s < scene_count; ++s) sum += evaluator(s, angle);
    rows.push_back({angle, sum / static_cast<double>(scene_count)});
  }
  return rows;
}

std::string sweep_to_csv(std::span<const SweepRow> rows) {
  std::string out = "angle_deg,psnr_last_frame\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.6f\n", r.angle_deg, r.psnr_last_frame);
    out += buf;
  }
  return out;
}

}  // namespace scene4d
