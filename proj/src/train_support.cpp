// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene4d/train_support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scene4d/io.hpp"

namespace scene4d {

FeatureGrid::FeatureGrid(int t, int h, int w, int d, double fill)
    : frames(t), height(h), width(w), dims(d) {
  if (t < 0 || h < 0 || w < 0 || d <= 0) throw ValidationError("feature grid: invalid dimensions");
  data.assign(positions() * static_cast<std::size_t>(d), fill);
}

void FeatureGrid::validate() const {
  if (data.size() != positions() * static_cast<std::size_t>(dims))
    throw ValidationError("feature grid: data size does not match dimensions");
  for (double v : data)
    if (!std::isfinite(v)) throw ValidationError("feature grid: non-finite entry");
}

void LossConfig::validate() const {
  if (!(final_fraction > 0.0 && final_fraction <= 1.0)) throw ValidationError("loss: final_fraction must be in (0, 1]");
  if (ramp_iters < 0) throw ValidationError("loss: ramp_iters must be >= 0");
  if (vehicle_weight < 1.0 || person_weight < 1.0) throw ValidationError("loss: weights must be >= 1");
}

const std::vector<std::string>& vehicle_category_names() {
  static const std::vector<std::string> names{"Bus",        "Car",   "Caravan/RV", "ConstructionVehicle",
                                              "Bicycle",    "Motorcycle", "OwnCar", "Truck",
                                              "WheeledSlow"};
  return names;
}

const std::vector<std::string>& person_category_names() {
  static const std::vector<std::string> names{"Animal", "Bicyclist", "Motorcyclist", "OtherRider",
                                              "Pedestrian"};
  return names;
}

std::map<std::uint16_t, std::string> default_categories() {
  return {{0, "Ground"},      {1, "Car"},          {2, "Truck"},         {3, "Bus"},
          {4, "Pedestrian"},  {5, "Bicycle"},      {6, "Animal"},        {7, "Motorcycle"},
          {8, "Bicyclist"},   {9, "Caravan/RV"},   {10, "ConstructionVehicle"},
          {11, "OwnCar"},     {12, "WheeledSlow"}, {13, "Motorcyclist"}, {14, "OtherRider"},
          {15, "Building"},   {16, "Vegetation"},  {17, "Road"},         {18, "Sidewalk"},
          {kVoidLabel, "Void"}};
}

nlohmann::json categories_to_json(const std::map<std::uint16_t, std::string>& cats) {
  nlohmann::json names = nlohmann::json::object();
  for (const auto& [id, name] : cats) names[std::to_string(id)] = name;
  return {{"categories", names},
          {"vehicle", vehicle_category_names()},
          {"person", person_category_names()},
          {"void", kVoidLabel}};
}

std::map<std::uint16_t, std::string> categories_from_json(const nlohmann::json& j) {
  std::map<std::uint16_t, std::string> out;
  try {
    const auto& names = j.contains("categories") ? j.at("categories") : j;
    for (auto it = names.begin(); it != names.end(); ++it) {
      const int id = std::stoi(it.key());
      if (id < 0 || id > 65535) throw ValidationError("categories: id out of range");
      out[static_cast<std::uint16_t>(id)] = it.value().get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("categories json: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ValidationError("categories json: non-numeric id");
  }
  return out;
}

LossConfig loss_config_from_categories(const std::map<std::uint16_t, std::string>& cats) {
  LossConfig cfg;
  const auto& veh = vehicle_category_names();
  const auto& per = person_category_names();
  for (const auto& [id, name] : cats) {
    if (std::find(veh.begin(), veh.end(), name) != veh.end()) cfg.vehicle_ids.insert(id);
    if (std::find(per.begin(), per.end(), name) != per.end()) cfg.person_ids.insert(id);
  }
  return cfg;
}

LossConfig load_loss_config(const std::filesystem::path& categories_json) {
  return loss_config_from_categories(categories_from_json(read_json(categories_json)));
}

double focal_fraction(long iter, const LossConfig& cfg) {
  cfg.validate();
  if (iter < 0) throw ValidationError("focal_fraction: iteration must be >= 0");
  if (cfg.ramp_iters == 0) return cfg.final_fraction;
  const double ramp = 1.0 - (1.0 - cfg.final_fraction) * static_cast<double>(iter) / cfg.ramp_iters;
  return std::max(cfg.final_fraction, ramp);
}

std::size_t focal_keep_count(double q, std::size_t n) {
  if (!(q > 0.0 && q <= 1.0)) throw ValidationError("focal: fraction must be in (0, 1]");
  const double raw = std::ceil(q * static_cast<double>(n) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(raw), n == 0 ? 0 : 1, n);
}

double focal_l2(const FeatureGrid& pred, const FeatureGrid& target, double q, const WeightMap* weights) {
  if (!pred.same_shape(target)) throw ValidationError("focal_l2: shape mismatch");
  pred.validate();
  target.validate();
  const std::size_t n = pred.positions();
  if (weights && (weights->frames != pred.frames || weights->height != pred.height ||
                  weights->width != pred.width || weights->data.size() != n))
    throw ValidationError("focal_l2: weight map shape mismatch");
  const std::size_t k = focal_keep_count(q, n);
  if (k == 0) return 0.0;

  std::vector<double> err(n, 0.0);
  const std::size_t d = static_cast<std::size_t>(pred.dims);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      const double diff = pred.data[i * d + c] - target.data[i * d + c];
      s += diff * diff;
    }
    err[i] = s;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (k < n) {
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                     [&](std::size_t a, std::size_t b) { return err[a] != err[b] ? err[a] > err[b] : a < b; });
    order.resize(k);
    std::sort(order.begin(), order.end());
  }
  double sum = 0.0;
  for (std::size_t i : order) sum += (weights ? weights->data[i] : 1.0) * err[i];
  return sum / static_cast<double>(k);
}

WeightMap category_weight_map(const std::vector<LabelMap>& semantic, const LossConfig& cfg) {
  cfg.validate();
  WeightMap w;
  w.frames = static_cast<int>(semantic.size());
  if (!semantic.empty()) {
    w.width = semantic.front().width;
    w.height = semantic.front().height;
  }
  w.data.reserve(static_cast<std::size_t>(w.frames) * w.width * w.height);
  for (const auto& frame : semantic) {
    if (!frame.same_shape(w.width, w.height)) throw ValidationError("category_weight_map: frame shapes differ");
    for (auto label : frame.data) {
      double v = 1.0;
      if (cfg.person_ids.count(label)) v = cfg.person_weight;
      else if (cfg.vehicle_ids.count(label)) v = cfg.vehicle_weight;
      w.data.push_back(v);
    }
  }
  return w;
}

std::array<double, 3> normalize_delta(const PoseDelta& d, const SamplingBounds& bounds) {
  if (!(bounds.max_d_azimuth_deg > 0.0 && bounds.max_d_elevation_deg > 0.0 && bounds.max_d_radius_m > 0.0))
    throw ValidationError("fourier_encode: bounds maxima must be positive");
  return {d.d_azimuth_deg / bounds.max_d_azimuth_deg, d.d_elevation_deg / bounds.max_d_elevation_deg,
          d.d_radius_m / bounds.max_d_radius_m};
}

std::vector<double> fourier_encode_normalized(const std::array<double, 3>& c, int bands) {
  if (bands < 1) throw ValidationError("fourier_encode: need at least one band");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(6 * bands));
  for (double v : c) {
    for (int k = 0; k < bands; ++k) {
      const double w = std::ldexp(kPi / 2.0, k);
      out.push_back(std::sin(w * v));
      out.push_back(std::cos(w * v));
    }
  }
  return out;
}

std::vector<double> fourier_encode(const PoseDelta& d, const SamplingBounds& bounds, int bands) {
  return fourier_encode_normalized(normalize_delta(d, bounds), bands);
}

FeatureGrid conditioning_augment(const FeatureGrid& latent, Rng& rng, double sigma) {
  if (!(sigma >= 0.0)) throw ValidationError("conditioning_augment: sigma must be >= 0");
  FeatureGrid out = latent;
  if (sigma == 0.0) return out;
  std::normal_distribution<double> noise(0.0, 1.0);
  for (auto& v : out.data) v += sigma * noise(rng);
  return out;
}

}  // namespace scene4d
