// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/sphere_geometry.hpp"

#include <string>

#include "panowarp/error.hpp"

namespace panowarp {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kHalfPi = 0.5 * kPi;
constexpr double kMinTargetDistance = 1e-12;

}  // namespace

void validate_dims(const PanoDims& dims) {
  if (dims.width < 2 || dims.height < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "raster must be at least 2x1, got " + std::to_string(dims.width) + "x" +
                    std::to_string(dims.height));
  }
}

void require_panoramic(const PanoDims& dims) {
  validate_dims(dims);
  if (!dims.is_panoramic()) {
    throw Error(ErrorKind::NonPanoramicDims,
                "panorama must be 2:1, got " + std::to_string(dims.width) + "x" +
                    std::to_string(dims.height));
  }
}

double wrap_u(double u, int width) {
  const double w = static_cast<double>(width);
  double r = std::fmod(u, w);
  if (r < 0.0) r += w;
  // fmod of a tiny negative value plus w can round up to exactly w.
  if (r >= w) r = 0.0;
  return r;
}

double wrap_phi(double phi) {
  if (phi >= -kPi && phi < kPi) return phi;
  double r = std::fmod(phi + kPi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r - kPi;
}

Direction pix_to_sph(const PixelCoord& p, const PanoDims& dims) {
  const double u = wrap_u(p.u, dims.width);
  return {kTwoPi * u / dims.width - kPi, kHalfPi - kPi * p.v / dims.height};
}

PixelCoord sph_to_pix(const Direction& d, const PanoDims& dims) {
  const double u = (d.phi + kPi) * dims.width / kTwoPi;
  const double v = (kHalfPi - d.theta) * dims.height / kPi;
  return {wrap_u(u, dims.width), v};
}

CartesianPoint sph_to_cart(const SphericalCoord& s) {
  const double ct = std::cos(s.theta);
  return {s.r * ct * std::sin(s.phi), s.r * ct * std::cos(s.phi), s.r * std::sin(s.theta)};
}

SphericalCoord cart_to_sph(const CartesianPoint& c) {
  const double r = c.norm();
  if (!(r > 0.0)) {
    throw Error(ErrorKind::ZeroRadius, "point coincides with the camera centre");
  }
  const double horizontal = std::hypot(c.x, c.y);
  return {std::atan2(c.x, c.y), std::atan2(c.z, horizontal), r};
}

Reprojection reproject_pixel(const PixelCoord& p, double depth, const Translation& t,
                             const PanoDims& dims) {
  return reproject_pixel(p, depth, t, dims, dims);
}

Reprojection reproject_pixel(const PixelCoord& p, double depth, const Translation& t,
                             const PanoDims& source_dims, const PanoDims& target_dims) {
  if (!(depth > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "depth must be positive");
  }
  if (t.is_zero() && source_dims == target_dims) {
    return {{wrap_u(p.u, source_dims.width), p.v}, depth};
  }
  const Direction dir = pix_to_sph(p, source_dims);
  const CartesianPoint world = sph_to_cart({dir.phi, dir.theta, depth});
  const CartesianPoint local = transfer_point(world, t);
  if (local.norm() < kMinTargetDistance) {
    throw Error(ErrorKind::PointAtCamera, "point coincides with the target camera centre");
  }
  const SphericalCoord s = cart_to_sph(local);
  return {sph_to_pix({s.phi, s.theta}, target_dims), s.r};
}

}  // namespace panowarp
