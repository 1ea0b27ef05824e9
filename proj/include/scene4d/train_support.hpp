// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// Forward-only reference math for a video-diffusion training stack: annealed focal L2
// loss with per-category weighting, Fourier features of the relative camera
// parameters, and conditioning-augmentation noise.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "scene4d/camera.hpp"
#include "scene4d/image.hpp"
#include "scene4d/trajectory.hpp"

namespace scene4d {

/// T×h×w positions, each carrying a D-dimensional feature vector (row-major, D fastest).
struct FeatureGrid {
  int frames = 0;
  int height = 0;
  int width = 0;
  int dims = 0;
  std::vector<double> data;

  FeatureGrid() = default;
  FeatureGrid(int t, int h, int w, int d, double fill = 0.0);

  std::size_t positions() const { return static_cast<std::size_t>(frames) * height * width; }
  bool same_shape(const FeatureGrid& o) const {
    return frames == o.frames && height == o.height && width == o.width && dims == o.dims;
  }
  void validate() const;
};

/// T×h×w scalar map (one weight per feature position).
struct WeightMap {
  int frames = 0;
  int height = 0;
  int width = 0;
  std::vector<double> data;
};

struct LossConfig {
  int ramp_iters = 5000;
  double final_fraction = 0.1;
  double vehicle_weight = 3.0;
  double person_weight = 7.0;
  std::set<std::uint16_t> vehicle_ids;
  std::set<std::uint16_t> person_ids;

  void validate() const;
};

/// Category names weighted as vehicles.
const std::vector<std::string>& vehicle_category_names();
/// Category names weighted as people.
const std::vector<std::string>& person_category_names();

/// Category table shipped with generated datasets (id -> name).
std::map<std::uint16_t, std::string> default_categories();
nlohmann::json categories_to_json(const std::map<std::uint16_t, std::string>& cats);
std::map<std::uint16_t, std::string> categories_from_json(const nlohmann::json& j);
/// Resolves vehicle/person id sets from a category table by name.
LossConfig loss_config_from_categories(const std::map<std::uint16_t, std::string>& cats);
LossConfig load_loss_config(const std::filesystem::path& categories_json);

/// Fraction of positions kept: linear from 1 to final_fraction over ramp_iters, then flat.
double focal_fraction(long iter, const LossConfig& cfg);

/// Number of positions kept for a fraction q of n positions: ceil(q n), at least 1.
std::size_t focal_keep_count(double q, std::size_t n);

/// Mean over the top ceil(q N) positions (ranked by unweighted squared L2 error summed
/// over D) of their weighted errors.
double focal_l2(const FeatureGrid& pred, const FeatureGrid& target, double q,
                const WeightMap* weights = nullptr);

/// 3 for vehicle ids, 7 for person ids, 1 otherwise.
WeightMap category_weight_map(const std::vector<LabelMap>& semantic, const LossConfig& cfg);

inline constexpr int kDefaultFourierBands = 8;

/// Δφ, Δθ, Δr normalized to [-1, 1] by the preset maxima.
std::array<double, 3> normalize_delta(const PoseDelta& d, const SamplingBounds& bounds);

/// For each normalized component c (component-major), for k in [0, bands): sin(w_k c),
/// cos(w_k c) with w_k = 2^k * pi / 2. Output length 6 * bands.
std::vector<double> fourier_encode(const PoseDelta& d, const SamplingBounds& bounds,
                                   int bands = kDefaultFourierBands);
std::vector<double> fourier_encode_normalized(const std::array<double, 3>& c,
                                              int bands = kDefaultFourierBands);

inline constexpr double kConditioningNoise = 0.02;

/// latent + sigma * N(0, 1), reproducible for a given stream.
FeatureGrid conditioning_augment(const FeatureGrid& latent, Rng& rng, double sigma = kConditioningNoise);

}  // namespace scene4d
