// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "panowarp/error.hpp"

namespace panowarp {

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimC1 = (0.01 * 1.0) * (0.01 * 1.0);
constexpr double kSsimC2 = (0.03 * 1.0) * (0.03 * 1.0);

void require_same_shape(const ImageBuffer& a, const ImageBuffer& b) {
  if (a.dims() != b.dims() || a.channels() != b.channels()) {
    throw Error(ErrorKind::DimsMismatch, "images differ in size or channel count");
  }
}

long long selected_pixels(const ImageBuffer& a, const Mask* mask) {
  if (mask == nullptr) return a.dims().pixel_count();
  if (mask->dims() != a.dims()) throw Error(ErrorKind::DimsMismatch, "mask size differs from image");
  const long long n = mask->count();
  if (n == 0) throw Error(ErrorKind::EmptyMask, "mask selects no pixels");
  return n;
}

template <typename Fn>
double masked_mean(const ImageBuffer& a, const ImageBuffer& b, const Mask* mask, Fn&& per_value) {
  double sum = 0.0;
  for (int v = 0; v < a.height(); ++v) {
    for (int u = 0; u < a.width(); ++u) {
      if (mask != nullptr && !mask->at(u, v)) continue;
      const auto pa = a.pixel(u, v);
      const auto pb = b.pixel(u, v);
      for (int c = 0; c < a.channels(); ++c) sum += per_value(pa[c], pb[c]);
    }
  }
  return sum;
}

std::array<double, kSsimWindow> gaussian_window() {
  std::array<double, kSsimWindow> w{};
  double total = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double x = i - kSsimWindow / 2;
    w[i] = std::exp(-x * x / (2.0 * kSsimSigma * kSsimSigma));
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

// Separable 'valid' filtering of one plane: output is (W - 10) x (H - 10).
std::vector<double> filter_valid(const std::vector<double>& plane, int width, int height,
                                 const std::array<double, kSsimWindow>& w) {
  const int ow = width - kSsimWindow + 1;
  const int oh = height - kSsimWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) s += w[k] * plane[static_cast<std::size_t>(y) * width + x + k];
      rows[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) s += w[k] * rows[static_cast<std::size_t>(y + k) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const MetricReport& report) {
  return {{"metric", report.name}, {"value", report.value}, {"mask_coverage", report.mask_coverage}};
}

MetricReport l1(const ImageBuffer& a, const ImageBuffer& b, const Mask* mask) {
  require_same_shape(a, b);
  const long long n = selected_pixels(a, mask);
  const double sum = masked_mean(a, b, mask, [](double x, double y) { return std::abs(x - y); });
  return {"l1", sum / (static_cast<double>(n) * a.channels()),
          static_cast<double>(n) / a.dims().pixel_count()};
}

double mean_squared_error(const ImageBuffer& a, const ImageBuffer& b, const Mask* mask) {
  require_same_shape(a, b);
  const long long n = selected_pixels(a, mask);
  const double sum = masked_mean(a, b, mask, [](double x, double y) { return (x - y) * (x - y); });
  return sum / (static_cast<double>(n) * a.channels());
}

MetricReport psnr(const ImageBuffer& a, const ImageBuffer& b, const Mask* mask, double peak) {
  if (!(peak > 0.0)) throw Error(ErrorKind::InvalidArgument, "peak must be positive");
  const double mse = mean_squared_error(a, b, mask);
  const long long n = selected_pixels(a, mask);
  const double value = mse == 0.0 ? kPsnrCap : 10.0 * std::log10(peak * peak / mse);
  return {"psnr", value, static_cast<double>(n) / a.dims().pixel_count()};
}

MetricReport ssim(const ImageBuffer& a, const ImageBuffer& b, const Mask* mask) {
  require_same_shape(a, b);
  if (a.width() < kSsimWindow || a.height() < kSsimWindow) {
    throw Error(ErrorKind::ImageTooSmall, "SSIM needs at least 11x11 pixels");
  }
  const long long selected = selected_pixels(a, mask);
  const int width = a.width();
  const int height = a.height();
  const int ow = width - kSsimWindow + 1;
  const int oh = height - kSsimWindow + 1;
  const int half = kSsimWindow / 2;
  const auto w = gaussian_window();

  const std::size_t n = static_cast<std::size_t>(width) * height;
  std::vector<double> pa(n), pb(n), paa(n), pbb(n), pab(n);
  double total = 0.0;
  long long windows = 0;
  for (int c = 0; c < a.channels(); ++c) {
    for (int v = 0; v < height; ++v) {
      for (int u = 0; u < width; ++u) {
        const std::size_t i = static_cast<std::size_t>(v) * width + u;
        const double x = a.at(u, v, c);
        const double y = b.at(u, v, c);
        pa[i] = x;
        pb[i] = y;
        paa[i] = x * x;
        pbb[i] = y * y;
        pab[i] = x * y;
      }
    }
    const auto mu_a = filter_valid(pa, width, height, w);
    const auto mu_b = filter_valid(pb, width, height, w);
    const auto e_aa = filter_valid(paa, width, height, w);
    const auto e_bb = filter_valid(pbb, width, height, w);
    const auto e_ab = filter_valid(pab, width, height, w);
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x) {
        if (mask != nullptr && !mask->at(x + half, y + half)) continue;
        const std::size_t i = static_cast<std::size_t>(y) * ow + x;
        const double ma = mu_a[i];
        const double mb = mu_b[i];
        const double va = e_aa[i] - ma * ma;
        const double vb = e_bb[i] - mb * mb;
        const double cov = e_ab[i] - ma * mb;
        total += ((2.0 * ma * mb + kSsimC1) * (2.0 * cov + kSsimC2)) /
                 ((ma * ma + mb * mb + kSsimC1) * (va + vb + kSsimC2));
        ++windows;
      }
    }
  }
  if (windows == 0) throw Error(ErrorKind::EmptyMask, "mask selects no SSIM window centre");
  return {"ssim", total / static_cast<double>(windows),
          static_cast<double>(selected) / a.dims().pixel_count()};
}

double bce_map(const ImageBuffer& pred, const ImageBuffer& target) {
  require_same_shape(pred, target);
  const auto p = pred.values();
  const auto t = target.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0) || !(t[i] >= 0.0 && t[i] <= 1.0)) {
      throw Error(ErrorKind::ValueOutOfRange, "BCE inputs must lie in [0, 1]");
    }
    const double q = std::clamp(p[i], kBceClamp, 1.0 - kBceClamp);
    sum += t[i] * std::log(q) + (1.0 - t[i]) * std::log(1.0 - q);
  }
  return -sum / static_cast<double>(p.size());
}

double layout_consistency(const LayoutMaps& predicted, const LayoutMaps& reference) {
  return bce_map(predicted.boundary, reference.boundary) +
         bce_map(predicted.corner, reference.corner);
}

}  // namespace panowarp
