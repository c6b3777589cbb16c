// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>

namespace panowarp {

inline constexpr double kPi = std::numbers::pi;

/// Raster extent in pixels. Full panoramas are 2:1 (see require_panoramic).
struct PanoDims {
  int width = 0;
  int height = 0;

  long long pixel_count() const { return static_cast<long long>(width) * height; }
  bool is_panoramic() const { return width >= 2 && height >= 1 && width == 2 * height; }

  friend bool operator==(const PanoDims&, const PanoDims&) = default;
};

/// Throws InvalidArgument unless W >= 2 and H >= 1.
void validate_dims(const PanoDims& dims);
/// Throws NonPanoramicDims unless the extent is a valid 2:1 panorama.
void require_panoramic(const PanoDims& dims);

/// Continuous pixel position; pixel index i is sampled at i + 0.5.
struct PixelCoord {
  double u = 0.0;
  double v = 0.0;
};

/// Longitude/latitude pair of a viewing direction.
struct Direction {
  double phi = 0.0;
  double theta = 0.0;
};

struct SphericalCoord {
  double phi = 0.0;
  double theta = 0.0;
  double r = 0.0;
};

/// Camera-centred axes: x rightward, y forward, z upward (meters).
struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }

  friend CartesianPoint operator+(const CartesianPoint& a, const CartesianPoint& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend CartesianPoint operator-(const CartesianPoint& a, const CartesianPoint& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend CartesianPoint operator*(double s, const CartesianPoint& p) {
    return {s * p.x, s * p.y, s * p.z};
  }
};

/// Displacement of the target camera relative to the source camera.
struct Translation {
  double tx = 0.0;
  double ty = 0.0;
  double tz = 0.0;

  bool is_zero() const { return tx == 0.0 && ty == 0.0 && tz == 0.0; }
  double length() const { return std::sqrt(tx * tx + ty * ty + tz * tz); }
  Translation operator-() const { return {-tx, -ty, -tz}; }
  CartesianPoint as_point() const { return {tx, ty, tz}; }

  friend bool operator==(const Translation&, const Translation&) = default;
};

struct Reprojection {
  PixelCoord pixel;
  double depth = 0.0;
};

/// Wraps u into [0, W).
double wrap_u(double u, int width);
/// Wraps a longitude into [-pi, pi).
double wrap_phi(double phi);

Direction pix_to_sph(const PixelCoord& p, const PanoDims& dims);
PixelCoord sph_to_pix(const Direction& d, const PanoDims& dims);

CartesianPoint sph_to_cart(const SphericalCoord& s);
/// Throws ZeroRadius for the origin.
SphericalCoord cart_to_sph(const CartesianPoint& c);

/// A world-fixed point expressed relative to the translated camera.
inline CartesianPoint transfer_point(const CartesianPoint& c, const Translation& t) {
  return c - t.as_point();
}

/// Maps a source-view pixel at radial depth `depth` into the view of a camera
/// translated by `t`. Throws PointAtCamera when the point sits on the target
/// camera centre. A zero translation is the exact identity (after wrapping u).
Reprojection reproject_pixel(const PixelCoord& p, double depth, const Translation& t,
                             const PanoDims& dims);

/// Same chain, but the source pixel lives on a raster of `source_dims` while
/// the result is expressed on `target_dims` (used for upsampled splatting).
Reprojection reproject_pixel(const PixelCoord& p, double depth, const Translation& t,
                             const PanoDims& source_dims, const PanoDims& target_dims);

}  // namespace panowarp
