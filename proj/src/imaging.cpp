// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "panowarp/error.hpp"

namespace panowarp {

ImageBuffer::ImageBuffer(PanoDims dims, int channels, double fill)
    : dims_(dims), channels_(channels) {
  validate_dims(dims);
  if (channels < 1) throw Error(ErrorKind::InvalidArgument, "channel count must be >= 1");
  data_.assign(static_cast<std::size_t>(dims.pixel_count()) * channels, fill);
}

ImageBuffer::ImageBuffer(PanoDims dims, int channels, std::vector<double> data)
    : dims_(dims), channels_(channels), data_(std::move(data)) {
  validate_dims(dims);
  if (channels < 1) throw Error(ErrorKind::InvalidArgument, "channel count must be >= 1");
  if (data_.size() != static_cast<std::size_t>(dims.pixel_count()) * channels) {
    throw Error(ErrorKind::DimsMismatch, "image data size does not match its dimensions");
  }
}

DepthBuffer::DepthBuffer(PanoDims dims, double fill) : dims_(dims) {
  validate_dims(dims);
  data_.assign(static_cast<std::size_t>(dims.pixel_count()), fill);
}

DepthBuffer::DepthBuffer(PanoDims dims, std::vector<double> data)
    : dims_(dims), data_(std::move(data)) {
  validate_dims(dims);
  if (data_.size() != static_cast<std::size_t>(dims.pixel_count())) {
    throw Error(ErrorKind::DimsMismatch, "depth data size does not match its dimensions");
  }
}

void DepthBuffer::validate() const {
  for (double d : data_) {
    if (!(d > 0.0) || !(d <= kMaxDepth)) {
      throw Error(ErrorKind::DepthOutOfRange,
                  "depth value " + std::to_string(d) + " outside (0, 65.535] m");
    }
  }
}

Mask::Mask(PanoDims dims, bool fill) : dims_(dims) {
  validate_dims(dims);
  data_.assign(static_cast<std::size_t>(dims.pixel_count()), fill ? 1 : 0);
}

long long Mask::count() const {
  return std::count(data_.begin(), data_.end(), std::uint8_t{1});
}

ImageBuffer nearest_upsample(const ImageBuffer& buffer, int factor) {
  if (factor < 1) throw Error(ErrorKind::InvalidArgument, "upsample factor must be >= 1");
  if (factor == 1) return buffer;
  const PanoDims out_dims{buffer.width() * factor, buffer.height() * factor};
  ImageBuffer out(out_dims, buffer.channels());
  for (int v = 0; v < out_dims.height; ++v) {
    for (int u = 0; u < out_dims.width; ++u) {
      const auto src = buffer.pixel(u / factor, v / factor);
      std::copy(src.begin(), src.end(), out.pixel(u, v).begin());
    }
  }
  return out;
}

DepthBuffer upsampled_depth(const DepthBuffer& depth, int factor) {
  if (factor < 1) throw Error(ErrorKind::InvalidArgument, "upsample factor must be >= 1");
  if (factor == 1) return depth;
  const PanoDims out_dims{depth.width() * factor, depth.height() * factor};
  DepthBuffer out(out_dims, 0.0);
  for (int v = 0; v < out_dims.height; ++v) {
    for (int u = 0; u < out_dims.width; ++u) {
      out.at(u, v) = depth.at(u / factor, v / factor);
    }
  }
  return out;
}

std::uint8_t quantize_unit(double value) {
  const double scaled = std::round(value * 255.0);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

}  // namespace panowarp
