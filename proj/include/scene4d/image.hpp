// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scene4d/errors.hpp"

namespace scene4d {

/// Dense row-major H×W×C raster.
template <typename T>
struct Plane {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<T> data;

  Plane() = default;
  Plane(int w, int h, int c, T fill = T{})
      : width(w), height(h), channels(c),
        data(static_cast<std::size_t>(w) * h * c, fill) {
    if (w < 0 || h < 0 || c <= 0) throw ValidationError("invalid plane dimensions");
  }

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  std::size_t index(int x, int y, int c = 0) const {
    return (static_cast<std::size_t>(y) * width + x) * channels + c;
  }
  T& at(int x, int y, int c = 0) { return data[index(x, y, c)]; }
  const T& at(int x, int y, int c = 0) const { return data[index(x, y, c)]; }

  bool same_shape(int w, int h) const { return width == w && height == h; }
  template <typename U>
  bool same_shape(const Plane<U>& o) const { return width == o.width && height == o.height; }

  bool operator==(const Plane&) const = default;
};

/// RGB image with values in [0, 1].
using ImageRGB = Plane<float>;
/// Single-channel category ids.
using LabelMap = Plane<std::uint16_t>;
/// Single-channel z-depth in meters; 0 marks an invalid pixel.
using DepthMap = Plane<double>;
/// Single-channel boolean raster (0 or 1).
using BoolMap = Plane<std::uint8_t>;

inline ImageRGB make_rgb(int w, int h, float fill = 0.0f) { return ImageRGB(w, h, 3, fill); }
inline DepthMap make_depth(int w, int h) { return DepthMap(w, h, 1, 0.0); }
inline LabelMap make_labels(int w, int h, std::uint16_t fill = 0) { return LabelMap(w, h, 1, fill); }

/// Label used for pixels without content.
inline constexpr std::uint16_t kVoidLabel = 255;

inline bool depth_valid(double d) { return d > 0.0; }

}  // namespace scene4d
