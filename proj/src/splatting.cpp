// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/splatting.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "panowarp/error.hpp"
#include "parallel.hpp"

namespace panowarp {

void SplatParams::validate() const {
  if (!(d_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "d_max must be positive");
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (upsample_factor < 1) throw Error(ErrorKind::InvalidArgument, "upsample factor must be >= 1");
  if (!(hole_threshold > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "hole threshold must be positive");
  }
}

SplatAccumulator::SplatAccumulator(PanoDims dims, int channels, double d_max)
    : dims_(dims), channels_(channels), d_max_(d_max) {
  validate_dims(dims);
  const auto pixels = static_cast<std::size_t>(dims.pixel_count());
  weighted_sum_.assign(pixels * channels, 0.0);
  weight_sum_.assign(pixels, 0.0);
}

void SplatAccumulator::splat(const PixelCoord& target, double source_depth,
                             std::span<const double> values) {
  const double x = target.u - 0.5;
  const double y = target.v - 0.5;
  const double x0 = std::floor(x);
  const double y0 = std::floor(y);
  const double fx = x - x0;
  const double fy = y - y0;
  const double z = std::exp(-source_depth / d_max_);

  const int col0 = static_cast<int>(x0);
  const int row0 = static_cast<int>(y0);
  const int cols[2] = {(col0 % dims_.width + dims_.width) % dims_.width,
                       ((col0 + 1) % dims_.width + dims_.width) % dims_.width};
  const double bx[2] = {1.0 - fx, fx};
  const double by[2] = {1.0 - fy, fy};

  for (int dy = 0; dy < 2; ++dy) {
    const int row = row0 + dy;
    if (row < 0 || row >= dims_.height) continue;
    for (int dx = 0; dx < 2; ++dx) {
      const double w = bx[dx] * by[dy] * z;
      const std::size_t pix = static_cast<std::size_t>(row) * dims_.width + cols[dx];
      weight_sum_[pix] += w;
      double* acc = weighted_sum_.data() + pix * channels_;
      for (int c = 0; c < channels_; ++c) acc[c] += w * values[c];
    }
  }
}

void SplatAccumulator::merge(const SplatAccumulator& other) {
  if (other.dims_ != dims_ || other.channels_ != channels_) {
    throw Error(ErrorKind::DimsMismatch, "cannot merge accumulators of different shape");
  }
  for (std::size_t i = 0; i < weighted_sum_.size(); ++i) weighted_sum_[i] += other.weighted_sum_[i];
  for (std::size_t i = 0; i < weight_sum_.size(); ++i) weight_sum_[i] += other.weight_sum_[i];
}

WarpOutput SplatAccumulator::resolve(double eps, double hole_threshold) const {
  WarpOutput out{ImageBuffer(dims_, channels_), ImageBuffer(dims_, 1), Mask(dims_, false)};
  for (int v = 0; v < dims_.height; ++v) {
    for (int u = 0; u < dims_.width; ++u) {
      const std::size_t pix = static_cast<std::size_t>(v) * dims_.width + u;
      const double w = weight_sum_[pix];
      out.weights.at(u, v, 0) = w;
      if (w < hole_threshold) {
        out.holes.set(u, v, true);
        continue;
      }
      const double denom = w + eps;
      for (int c = 0; c < channels_; ++c) {
        out.image.at(u, v, c) = weighted_sum_[pix * channels_ + c] / denom;
      }
    }
  }
  return out;
}

namespace {

void check_inputs(const ImageBuffer& source, const DepthBuffer& depth, const SplatParams& params) {
  params.validate();
  if (source.dims() != depth.dims()) {
    throw Error(ErrorKind::DimsMismatch,
                "source " + std::to_string(source.width()) + "x" + std::to_string(source.height()) +
                    " vs depth " + std::to_string(depth.width()) + "x" +
                    std::to_string(depth.height()));
  }
  require_panoramic(source.dims());
}

}  // namespace

WarpOutput forward_splat(const ImageBuffer& source, const DepthBuffer& depth,
                         const Translation& t, const SplatParams& params, int threads) {
  check_inputs(source, depth, params);
  const PanoDims dims = source.dims();
  const int factor = params.upsample_factor;
  const ImageBuffer up_source = nearest_upsample(source, factor);
  const DepthBuffer up_depth = upsampled_depth(depth, factor);
  const PanoDims up_dims = up_source.dims();

  const int workers = detail::resolve_thread_count(threads, up_dims.height);
  std::vector<std::unique_ptr<SplatAccumulator>> partial(workers);

  detail::for_each_row_chunk(up_dims.height, workers, [&](int worker, int begin, int end) {
    auto acc = std::make_unique<SplatAccumulator>(dims, source.channels(), params.d_max);
    for (int v = begin; v < end; ++v) {
      for (int u = 0; u < up_dims.width; ++u) {
        const double d = up_depth.at(u, v);
        Reprojection r;
        try {
          r = reproject_pixel({u + 0.5, v + 0.5}, d, t, up_dims, dims);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::PointAtCamera) continue;
          throw;
        }
        acc->splat(r.pixel, d, up_source.pixel(u, v));
      }
    }
    partial[worker] = std::move(acc);
  });

  for (int w = 1; w < workers; ++w) partial[0]->merge(*partial[w]);
  return partial[0]->resolve(params.eps, params.hole_threshold);
}

WarpOutput splat_reference(const ImageBuffer& source, const DepthBuffer& depth,
                           const Translation& t, const SplatParams& params) {
  check_inputs(source, depth, params);
  const PanoDims dims = source.dims();
  const int f = params.upsample_factor;
  const PanoDims up_dims{dims.width * f, dims.height * f};
  const int channels = source.channels();
  const int width = dims.width;
  const int height = dims.height;

  std::vector<double> num(static_cast<std::size_t>(dims.pixel_count()) * channels, 0.0);
  std::vector<double> den(static_cast<std::size_t>(dims.pixel_count()), 0.0);

  for (int v = 0; v < up_dims.height; ++v) {
    for (int u = 0; u < up_dims.width; ++u) {
      const double d = depth.at(u / f, v / f);
      Reprojection r;
      try {
        r = reproject_pixel({u + 0.5, v + 0.5}, d, t, up_dims, dims);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::PointAtCamera) continue;
        throw;
      }
      const double x = r.pixel.u - 0.5;
      const double y = r.pixel.v - 0.5;
      const double x0 = std::floor(x);
      const double y0 = std::floor(y);
      const double fx = x - x0;
      const double fy = y - y0;
      const double z = std::exp(-d / params.d_max);
      for (int dy = 0; dy < 2; ++dy) {
        const int row = static_cast<int>(y0) + dy;
        if (row < 0 || row >= height) continue;
        for (int dx = 0; dx < 2; ++dx) {
          int col = (static_cast<int>(x0) + dx) % width;
          if (col < 0) col += width;
          const double w = (dx ? fx : 1.0 - fx) * (dy ? fy : 1.0 - fy) * z;
          const std::size_t pix = static_cast<std::size_t>(row) * width + col;
          den[pix] += w;
          for (int c = 0; c < channels; ++c) {
            num[pix * channels + c] += w * source.at(u / f, v / f, c);
          }
        }
      }
    }
  }

  WarpOutput out{ImageBuffer(dims, channels), ImageBuffer(dims, 1), Mask(dims, false)};
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      const std::size_t pix = static_cast<std::size_t>(v) * width + u;
      out.weights.at(u, v, 0) = den[pix];
      if (den[pix] < params.hole_threshold) {
        out.holes.set(u, v, true);
        continue;
      }
      for (int c = 0; c < channels; ++c) {
        out.image.at(u, v, c) = num[pix * channels + c] / (den[pix] + params.eps);
      }
    }
  }
  return out;
}

double missing_rate(const WarpOutput& out) {
  const auto total = out.holes.dims().pixel_count();
  if (total == 0) return 0.0;
  return static_cast<double>(out.holes.count()) / static_cast<double>(total);
}

}  // namespace panowarp
