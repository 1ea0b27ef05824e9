// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// File formats: PFM depth (little-endian, scale -1.0), 8-bit RGB/label PNG, and
// packed 1-bit / 2-bit PNG masks. All writers are deterministic and go through a
// temporary file that is renamed into place.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "scene4d/image.hpp"

namespace scene4d {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
/// Writes to `path.tmp` and renames atomically.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

nlohmann::json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Single-channel float PFM ("Pf"), rows stored bottom to top.
std::vector<std::uint8_t> encode_pfm(const DepthMap& depth);
DepthMap decode_pfm(std::span<const std::uint8_t> bytes);
void write_pfm(const std::filesystem::path& path, const DepthMap& depth);
DepthMap read_pfm(const std::filesystem::path& path);

/// Quantizes [0, 1] to 8 bits with round-to-nearest.
std::uint8_t quantize_unit(float v);

std::vector<std::uint8_t> encode_png_rgb(const ImageRGB& img);
ImageRGB decode_png_rgb(std::span<const std::uint8_t> bytes);
/// Labels must fit in 8 bits.
std::vector<std::uint8_t> encode_png_labels(const LabelMap& labels);
LabelMap decode_png_labels(std::span<const std::uint8_t> bytes);
/// Gray PNG with the given bit depth (1, 2, 4 or 8); values must fit.
std::vector<std::uint8_t> encode_png_gray(const Plane<std::uint8_t>& img, int bit_depth);
Plane<std::uint8_t> decode_png_gray(std::span<const std::uint8_t> bytes);

void write_png_rgb(const std::filesystem::path& path, const ImageRGB& img);
ImageRGB read_png_rgb(const std::filesystem::path& path);
void write_png_labels(const std::filesystem::path& path, const LabelMap& labels);
LabelMap read_png_labels(const std::filesystem::path& path);
void write_png_gray(const std::filesystem::path& path, const Plane<std::uint8_t>& img,
                    int bit_depth);
Plane<std::uint8_t> read_png_gray(const std::filesystem::path& path);

/// "frame_%04d" + ext.
std::string frame_filename(int index, const std::string& ext);

/// 64-bit FNV-1a, used for provenance config hashes.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

}  // namespace scene4d
