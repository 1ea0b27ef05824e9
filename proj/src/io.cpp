// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene4d/io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace scene4d {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp.string() + "': " + ec.message());
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

nlohmann::json read_json(const fs::path& path) {
  const auto bytes = read_file(path);
  try {
    return nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// PFM

namespace {

void put_f32_le(std::vector<std::uint8_t>& out, float f) {
  std::uint32_t bits;
  std::memcpy(&bits, &f, 4);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

float get_f32(const std::uint8_t* p, bool little_endian) {
  std::uint32_t bits = 0;
  for (int i = 0; i < 4; ++i) {
    const int shift = little_endian ? 8 * i : 8 * (3 - i);
    bits |= static_cast<std::uint32_t>(p[i]) << shift;
  }
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}

}  // namespace

std::vector<std::uint8_t> encode_pfm(const DepthMap& depth) {
  if (depth.channels != 1) throw ValidationError("PFM depth must be single-channel");
  const std::string header =
      "Pf\n" + std::to_string(depth.width) + " " + std::to_string(depth.height) + "\n-1.0\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + depth.pixel_count() * 4);
  for (int y = depth.height - 1; y >= 0; --y)
    for (int x = 0; x < depth.width; ++x) put_f32_le(out, static_cast<float>(depth.at(x, y)));
  return out;
}

DepthMap decode_pfm(std::span<const std::uint8_t> bytes) {
  // Header: three whitespace-terminated tokens.
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    std::string t;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) t.push_back(static_cast<char>(bytes[pos++]));
    return t;
  };
  const std::string magic = token();
  if (magic != "Pf") throw IoError("PFM: expected single-channel 'Pf' header");
  int w = 0, h = 0;
  double scale = 0.0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    scale = std::stod(token());
  } catch (const std::exception&) {
    throw IoError("PFM: malformed header");
  }
  ++pos;  // single whitespace byte ends the header
  if (w <= 0 || h <= 0 || scale == 0.0) throw IoError("PFM: invalid dimensions or scale");
  const bool little = scale < 0.0;
  const std::size_t need = static_cast<std::size_t>(w) * h * 4;
  if (bytes.size() < pos + need) throw IoError("PFM: truncated pixel data");
  DepthMap d = make_depth(w, h);
  const std::uint8_t* p = bytes.data() + pos;
  for (int y = h - 1; y >= 0; --y)
    for (int x = 0; x < w; ++x, p += 4) d.at(x, y) = static_cast<double>(get_f32(p, little));
  return d;
}

void write_pfm(const fs::path& path, const DepthMap& depth) { write_file_atomic(path, encode_pfm(depth)); }
DepthMap read_pfm(const fs::path& path) { return decode_pfm(read_file(path)); }

// ---------------------------------------------------------------------------
// PNG

std::uint8_t quantize_unit(float v) {
  const float c = std::clamp(v, 0.0f, 1.0f);
  return static_cast<std::uint8_t>(std::lround(c * 255.0f));
}

namespace {

struct PngRaw {
  int width = 0;
  int height = 0;
  int channels = 0;   // after transforms
  int bit_depth = 0;  // original
  std::vector<std::uint8_t> pixels;  // one byte per sample
};

void png_write_to_vector(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

void png_flush_noop(png_structp) {}

// Packs rows of one-byte samples into the given bit depth and encodes them.
bool png_encode_raw(const PngRaw& raw, int color_type, std::vector<std::uint8_t>& out) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  const int samples_per_row = raw.width * raw.channels;
  const int bits = raw.bit_depth;
  const std::size_t row_bytes = (static_cast<std::size_t>(samples_per_row) * bits + 7) / 8;
  std::vector<std::uint8_t> packed(row_bytes * raw.height, 0);
  for (int y = 0; y < raw.height; ++y) {
    std::uint8_t* row = packed.data() + row_bytes * y;
    const std::uint8_t* src = raw.pixels.data() + static_cast<std::size_t>(samples_per_row) * y;
    if (bits == 8) {
      std::memcpy(row, src, samples_per_row);
    } else {
      const int per_byte = 8 / bits;
      for (int i = 0; i < samples_per_row; ++i) {
        const int shift = 8 - bits * (i % per_byte + 1);
        row[i / per_byte] |= static_cast<std::uint8_t>(src[i] << shift);
      }
    }
  }
  std::vector<png_bytep> rows(raw.height);
  for (int y = 0; y < raw.height; ++y) rows[y] = packed.data() + row_bytes * y;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, raw.width, raw.height, bits, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

struct PngReader {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void png_read_from_span(png_structp png, png_bytep data, png_size_t len) {
  auto* r = static_cast<PngReader*>(png_get_io_ptr(png));
  if (r->pos + len > r->bytes.size()) png_error(png, "truncated PNG");
  std::memcpy(data, r->bytes.data() + r->pos, len);
  r->pos += len;
}

bool png_decode_raw(std::span<const std::uint8_t> bytes, PngRaw& raw) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) return false;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  PngReader reader{bytes, 0};
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, &reader, png_read_from_span);
  png_read_info(png, info);
  raw.width = static_cast<int>(png_get_image_width(png, info));
  raw.height = static_cast<int>(png_get_image_height(png, info));
  raw.bit_depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (raw.bit_depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (raw.bit_depth < 8) png_set_packing(png);
  png_read_update_info(png, info);
  raw.channels = png_get_channels(png, info);
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  raw.pixels.assign(row_bytes * raw.height, 0);
  rows.resize(raw.height);
  for (int y = 0; y < raw.height; ++y) rows[y] = raw.pixels.data() + row_bytes * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

PngRaw decode_or_throw(std::span<const std::uint8_t> bytes) {
  PngRaw raw;
  if (!png_decode_raw(bytes, raw)) throw IoError("PNG: decode failed");
  return raw;
}

std::vector<std::uint8_t> encode_or_throw(const PngRaw& raw, int color_type) {
  std::vector<std::uint8_t> out;
  if (!png_encode_raw(raw, color_type, out)) throw IoError("PNG: encode failed");
  return out;
}

}  // namespace

std::vector<std::uint8_t> encode_png_rgb(const ImageRGB& img) {
  if (img.channels != 3) throw ValidationError("PNG RGB: image must have 3 channels");
  PngRaw raw{img.width, img.height, 3, 8, {}};
  raw.pixels.resize(img.data.size());
  std::transform(img.data.begin(), img.data.end(), raw.pixels.begin(), quantize_unit);
  return encode_or_throw(raw, PNG_COLOR_TYPE_RGB);
}

ImageRGB decode_png_rgb(std::span<const std::uint8_t> bytes) {
  const PngRaw raw = decode_or_throw(bytes);
  ImageRGB img = make_rgb(raw.width, raw.height);
  for (std::size_t i = 0; i < img.pixel_count(); ++i)
    for (int c = 0; c < 3; ++c) {
      const std::uint8_t v = raw.channels >= 3 ? raw.pixels[i * raw.channels + c] : raw.pixels[i * raw.channels];
      img.data[i * 3 + c] = static_cast<float>(v) / 255.0f;
    }
  return img;
}

std::vector<std::uint8_t> encode_png_labels(const LabelMap& labels) {
  Plane<std::uint8_t> g(labels.width, labels.height, 1);
  for (std::size_t i = 0; i < labels.data.size(); ++i) {
    if (labels.data[i] > 255) throw ValidationError("PNG labels: id exceeds 8 bits");
    g.data[i] = static_cast<std::uint8_t>(labels.data[i]);
  }
  return encode_png_gray(g, 8);
}

LabelMap decode_png_labels(std::span<const std::uint8_t> bytes) {
  const auto g = decode_png_gray(bytes);
  LabelMap l = make_labels(g.width, g.height);
  std::copy(g.data.begin(), g.data.end(), l.data.begin());
  return l;
}

std::vector<std::uint8_t> encode_png_gray(const Plane<std::uint8_t>& img, int bit_depth) {
  if (img.channels != 1) throw ValidationError("PNG gray: image must be single-channel");
  if (bit_depth != 1 && bit_depth != 2 && bit_depth != 4 && bit_depth != 8)
    throw ValidationError("PNG gray: unsupported bit depth");
  const int max_v = (1 << bit_depth) - 1;
  for (auto v : img.data)
    if (v > max_v) throw ValidationError("PNG gray: value does not fit the bit depth");
  PngRaw raw{img.width, img.height, 1, bit_depth, img.data};
  return encode_or_throw(raw, PNG_COLOR_TYPE_GRAY);
}

Plane<std::uint8_t> decode_png_gray(std::span<const std::uint8_t> bytes) {
  const PngRaw raw = decode_or_throw(bytes);
  if (raw.channels != 1) throw IoError("PNG gray: expected a single-channel image");
  Plane<std::uint8_t> g(raw.width, raw.height, 1);
  g.data = raw.pixels;
  return g;
}

void write_png_rgb(const fs::path& path, const ImageRGB& img) { write_file_atomic(path, encode_png_rgb(img)); }
ImageRGB read_png_rgb(const fs::path& path) { return decode_png_rgb(read_file(path)); }
void write_png_labels(const fs::path& path, const LabelMap& l) { write_file_atomic(path, encode_png_labels(l)); }
LabelMap read_png_labels(const fs::path& path) { return decode_png_labels(read_file(path)); }
void write_png_gray(const fs::path& path, const Plane<std::uint8_t>& img, int bit_depth) {
  write_file_atomic(path, encode_png_gray(img, bit_depth));
}
Plane<std::uint8_t> read_png_gray(const fs::path& path) { return decode_png_gray(read_file(path)); }

std::string frame_filename(int index, const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%04d", index);
  return std::string(buf) + ext;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace scene4d
