// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "panowarp/imaging.hpp"
#include "panowarp/layout.hpp"

namespace panowarp {

struct MetricReport {
  std::string name;
  double value = 0.0;
  double mask_coverage = 1.0;  // fraction of pixels evaluated
};

nlohmann::json to_json(const MetricReport& report);

inline constexpr double kPsnrCap = 99.0;       // dB reported for identical inputs
inline constexpr double kBceClamp = 1e-7;

// A mask, when given, selects the evaluated pixels (set = evaluated). All
// metrics throw DimsMismatch on shape mismatch and EmptyMask on an empty mask.

MetricReport l1(const ImageBuffer& a, const ImageBuffer& b, const Mask* mask = nullptr);
double mean_squared_error(const ImageBuffer& a, const ImageBuffer& b, const Mask* mask = nullptr);
MetricReport psnr(const ImageBuffer& a, const ImageBuffer& b, const Mask* mask = nullptr,
                  double peak = 1.0);

/// Mean local SSIM with an 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, dynamic range 1, over windows fully inside the image and
/// averaged across channels. With a mask, only windows centred on a masked
/// pixel count. Throws ImageTooSmall below 11 pixels on a side.
MetricReport ssim(const ImageBuffer& a, const ImageBuffer& b, const Mask* mask = nullptr);

/// Binary cross entropy with pred clamped to [1e-7, 1 - 1e-7]. Throws
/// ValueOutOfRange for values outside [0, 1].
double bce_map(const ImageBuffer& pred, const ImageBuffer& target);

double layout_consistency(const LayoutMaps& predicted, const LayoutMaps& reference);

}  // namespace panowarp
