// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "panowarp/sphere_geometry.hpp"

namespace panowarp {

/// Row-major H x W x C raster of doubles. Pixels are interleaved.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(PanoDims dims, int channels, double fill = 0.0);
  ImageBuffer(PanoDims dims, int channels, std::vector<double> data);

  const PanoDims& dims() const { return dims_; }
  int width() const { return dims_.width; }
  int height() const { return dims_.height; }
  int channels() const { return channels_; }

  double& at(int u, int v, int c) { return data_[index(u, v, c)]; }
  double at(int u, int v, int c) const { return data_[index(u, v, c)]; }

  std::span<double> pixel(int u, int v) {
    return {data_.data() + index(u, v, 0), static_cast<std::size_t>(channels_)};
  }
  std::span<const double> pixel(int u, int v) const {
    return {data_.data() + index(u, v, 0), static_cast<std::size_t>(channels_)};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t index(int u, int v, int c) const {
    return (static_cast<std::size_t>(v) * dims_.width + u) * channels_ + c;
  }

  PanoDims dims_{};
  int channels_ = 0;
  std::vector<double> data_;
};

/// Radial distance per pixel in meters.
class DepthBuffer {
 public:
  /// Largest depth representable by the millimeter PNG encoding.
  static constexpr double kMaxDepth = 65.535;

  DepthBuffer() = default;
  DepthBuffer(PanoDims dims, double fill);
  DepthBuffer(PanoDims dims, std::vector<double> data);

  const PanoDims& dims() const { return dims_; }
  int width() const { return dims_.width; }
  int height() const { return dims_.height; }

  double& at(int u, int v) { return data_[static_cast<std::size_t>(v) * dims_.width + u]; }
  double at(int u, int v) const { return data_[static_cast<std::size_t>(v) * dims_.width + u]; }

  std::span<const double> values() const { return data_; }

  /// Throws DepthOutOfRange if any value is not in (0, kMaxDepth].
  void validate() const;

  friend bool operator==(const DepthBuffer&, const DepthBuffer&) = default;

 private:
  PanoDims dims_{};
  std::vector<double> data_;
};

/// Binary H x W mask.
class Mask {
 public:
  Mask() = default;
  Mask(PanoDims dims, bool fill);

  const PanoDims& dims() const { return dims_; }
  int width() const { return dims_.width; }
  int height() const { return dims_.height; }

  bool at(int u, int v) const { return data_[static_cast<std::size_t>(v) * dims_.width + u] != 0; }
  void set(int u, int v, bool value) {
    data_[static_cast<std::size_t>(v) * dims_.width + u] = value ? 1 : 0;
  }

  long long count() const;

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  PanoDims dims_{};
  std::vector<std::uint8_t> data_;
};

/// Each output pixel copies source pixel (floor(u / factor), floor(v / factor)).
ImageBuffer nearest_upsample(const ImageBuffer& buffer, int factor);
DepthBuffer upsampled_depth(const DepthBuffer& depth, int factor);

// PNG storage. RGB and grayscale images are 8-bit (value = byte / 255), depth
// is 16-bit grayscale millimeters.
ImageBuffer load_rgb(const std::filesystem::path& path);
void save_rgb(const ImageBuffer& buffer, const std::filesystem::path& path);

ImageBuffer load_gray(const std::filesystem::path& path);
void save_gray(const ImageBuffer& buffer, const std::filesystem::path& path);

DepthBuffer load_depth(const std::filesystem::path& path);
void save_depth(const DepthBuffer& depth, const std::filesystem::path& path);

/// 0/255 grayscale, nonzero = set.
Mask load_mask(const std::filesystem::path& path);
void save_mask(const Mask& mask, const std::filesystem::path& path);

/// Raw 16-bit grayscale access, used for fixed-point maps.
std::vector<std::uint16_t> load_gray16(const std::filesystem::path& path, PanoDims& dims);
void save_gray16(std::span<const std::uint16_t> samples, const PanoDims& dims,
                 const std::filesystem::path& path);

std::uint8_t quantize_unit(double value);

}  // namespace panowarp
