// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "panowarp/imaging.hpp"
#include "panowarp/sphere_geometry.hpp"

namespace panowarp {

struct SplatParams {
  double d_max = 10.0;           // soft z-buffer depth scale, meters
  double eps = 1e-8;             // added to the weight sum in the denominator
  int upsample_factor = 2;       // nearest-neighbour source upsampling before splatting
  double hole_threshold = 1e-4;  // accumulated weight below this marks a hole

  /// Throws InvalidArgument on a non-positive field.
  void validate() const;
};

struct WarpOutput {
  ImageBuffer image;    // resolved values, 0 at holes
  ImageBuffer weights;  // single channel, accumulated soft z-buffer weight
  Mask holes;           // set where weights < hole_threshold
};

/// Weighted scatter target on a panorama grid.
///
/// A sample at continuous pixel position (u, v) lands on the four pixels whose
/// centres surround it. Pixel i has its centre at i + 0.5, so in "centre
/// index" space the footprint is floor(x), floor(x) + 1 with x = u - 0.5.
/// Columns wrap around the seam; rows outside [0, H) are dropped. Each
/// contribution is weighted by bilinear_weight * exp(-depth / d_max).
class SplatAccumulator {
 public:
  SplatAccumulator(PanoDims dims, int channels, double d_max);

  const PanoDims& dims() const { return dims_; }
  int channels() const { return channels_; }

  void splat(const PixelCoord& target, double source_depth, std::span<const double> values);

  /// Adds another accumulator's sums into this one, element by element.
  void merge(const SplatAccumulator& other);

  WarpOutput resolve(double eps, double hole_threshold) const;

 private:
  PanoDims dims_;
  int channels_;
  double d_max_;
  std::vector<double> weighted_sum_;
  std::vector<double> weight_sum_;
};

/// Forward-warps `source` into the view of a camera translated by `t`.
/// `threads` = 0 picks a worker count from the hardware, 1 is the sequential
/// path. Output is bit-identical for a fixed thread count.
WarpOutput forward_splat(const ImageBuffer& source, const DepthBuffer& depth,
                         const Translation& t, const SplatParams& params = {}, int threads = 0);

/// Straight nested-loop version of forward_splat kept as a test oracle.
WarpOutput splat_reference(const ImageBuffer& source, const DepthBuffer& depth,
                           const Translation& t, const SplatParams& params = {});

/// Fraction of hole pixels in [0, 1].
double missing_rate(const WarpOutput& out);

}  // namespace panowarp
