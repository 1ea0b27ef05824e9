// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for unit and acceptance tests: scratch directories, tree comparison,
// and independent oracles (ray-cast visibility, direct-window SSIM).

#pragma once

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "scene4d/camera.hpp"
#include "scene4d/image.hpp"
#include "scene4d/metrics.hpp"
#include "scene4d/synthscene.hpp"

namespace scene4d::testing {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("scene4d_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::vector<char> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Relative paths of all regular files below `root`, sorted.
inline std::vector<fs::path> list_files(const fs::path& root) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), root));
  std::sort(out.begin(), out.end());
  return out;
}

/// True when both trees hold the same files with identical bytes; `why` names the first difference.
inline bool same_tree(const fs::path& a, const fs::path& b, std::string* why = nullptr, std::size_t* files = nullptr) {
  const auto fa = list_files(a), fb = list_files(b);
  if (files) *files = fa.size();
  if (fa != fb) {
    if (why) *why = "file lists differ";
    return false;
  }
  for (const auto& f : fa)
    if (slurp(a / f) != slurp(b / f)) {
      if (why) *why = "bytes differ in " + f.string();
      return false;
    }
  return true;
}

/// Visibility of world point `x` from `source` by casting a ray through the analytic scene.
inline Visibility raycast_visibility(const std::vector<SphereState>& state, const SceneSpec& spec,
                                     const Intrinsics& k, const Extrinsics& source, const Vec3& x,
                                     double abs_tol = 0.05, double rel_tol = 1e-3) {
  const Vec3 pc = source.world_to_camera(x);
  if (pc.z() <= 0.0) return Visibility::OutOfView;
  const double u = k.fx * pc.x() / pc.z() + k.cx;
  const double v = k.fy * pc.y() / pc.z() + k.cy;
  if (!(u >= 0.0 && u < k.width && v >= 0.0 && v < k.height)) return Visibility::OutOfView;
  const Vec3 origin = source.center();
  const Vec3 d = x - origin;
  const double dist = d.norm();
  const auto hit = trace_ray(state, spec, origin, d / dist);
  if (hit && hit->t < dist - (abs_tol + rel_tol * dist)) return Visibility::Occluded;
  return Visibility::Visible;
}

/// SSIM of two gray images evaluated pixel by pixel with an explicit 2-D Gaussian window
/// and mirrored borders; mean over the interior (border of (window - 1) / 2 excluded).
inline double reference_ssim(const std::vector<double>& a, const std::vector<double>& b, int w, int h,
                             int window = 11, double sigma = 1.5) {
  const int r = window / 2;
  std::vector<double> g(static_cast<std::size_t>(window) * window);
  double gs = 0.0;
  for (int j = -r; j <= r; ++j)
    for (int i = -r; i <= r; ++i) {
      const double val = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
      g[(j + r) * window + (i + r)] = val;
      gs += val;
    }
  auto mirror = [](int i, int n) {
    while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
    return i;
  };
  const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  double sum = 0.0;
  long n = 0;
  for (int y = r; y < h - r; ++y)
    for (int x = r; x < w - r; ++x) {
      double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
      for (int j = -r; j <= r; ++j)
        for (int i = -r; i <= r; ++i) {
          const double wt = g[(j + r) * window + (i + r)] / gs;
          const int idx = mirror(y + j, h) * w + mirror(x + i, w);
          ma += wt * a[idx];
          mb += wt * b[idx];
          saa += wt * a[idx] * a[idx];
          sbb += wt * b[idx] * b[idx];
          sab += wt * a[idx] * b[idx];
        }
      const double va = saa - ma * ma, vb = sbb - mb * mb, cov = sab - ma * mb;
      sum += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++n;
    }
  return sum / static_cast<double>(n);
}

/// Fixed 64x64 test image 0.5 + 0.25 sin(0.3 y) cos(0.2 x), replicated over RGB, plus `shift`.
inline ImageRGB ssim_test_image(float shift = 0.0f) {
  ImageRGB img = make_rgb(64, 64);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) {
      const float v = static_cast<float>(0.5 + 0.25 * std::sin(0.3 * y) * std::cos(0.2 * x)) + shift;
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = v;
    }
  return img;
}

/// skimage.metrics.structural_similarity(gaussian_weights=True, sigma=1.5,
/// use_sample_covariance=False, data_range=1) on ssim_test_image(0.05f) vs ssim_test_image().
inline constexpr double kSkimageShiftedSsim = 0.9948438136764923;

}  // namespace scene4d::testing
