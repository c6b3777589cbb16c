// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "panowarp/imaging.hpp"
#include "panowarp/sphere_geometry.hpp"

namespace panowarp {

enum class CornerKind { Ceiling, Floor };

struct LayoutCorner {
  PixelCoord pixel;
  CornerKind kind = CornerKind::Floor;
};

/// Room layout on a panorama of size `dims`.
///
/// Corners come in wall-junction pairs, ceiling first then floor, and the two
/// corners of a pair share one longitude. Junctions are ordered by increasing
/// longitude, so corners[2k], corners[2k + 1] is junction k.
struct Layout {
  PanoDims dims;
  std::vector<LayoutCorner> corners;

  std::size_t junction_count() const { return corners.size() / 2; }
  const LayoutCorner& ceiling(std::size_t junction) const { return corners[2 * junction]; }
  const LayoutCorner& floor(std::size_t junction) const { return corners[2 * junction + 1]; }
};

struct CameraConfig {
  double height = 1.6;  // meters above the floor
};

/// boundary: ch0 ceiling-wall, ch1 wall-wall, ch2 floor-wall. corner: 1 channel.
struct LayoutMaps {
  ImageBuffer boundary;
  ImageBuffer corner;
};

/// One wall-wall junction in camera coordinates.
struct Junction3D {
  CartesianPoint ceiling;
  CartesianPoint floor;
};

struct TransformedLayout {
  Layout layout;
  CameraConfig camera;
};

inline constexpr double kMaxPairLongitudeGap = 1e-6;  // radians
inline constexpr double kMinFloorDepression = 1e-4;   // radians below the horizon
inline constexpr double kDefaultLayoutSigma = 2.0;    // pixels

/// Empty result means the layout is valid.
std::vector<std::string> validate_layout(const Layout& layout);

/// Projects junctions seen from the origin and orders them by longitude.
Layout project_layout(std::span<const Junction3D> junctions, const PanoDims& dims);

/// 3D position of every corner (same order as layout.corners), with the floor
/// plane at z = -h. Throws InvalidLayout or DegenerateCorner.
std::vector<CartesianPoint> lift_layout(const Layout& layout, const CameraConfig& cam);
std::vector<Junction3D> lift_junctions(const Layout& layout, const CameraConfig& cam);

/// Re-expresses the layout as seen from a camera translated by `t`. Throws
/// CameraOutsideRoom, CameraAboveCeiling or CameraBelowFloor when the new
/// camera would leave the lifted room.
TransformedLayout transform_layout(const Layout& layout, const Translation& t,
                                   const CameraConfig& cam);

/// Gaussian-blurred boundary and corner maps at `dims`.
LayoutMaps rasterize_layout(const Layout& layout, const CameraConfig& cam, const PanoDims& dims,
                            double sigma = kDefaultLayoutSigma);

/// Number of samples drawn along every 3D edge before adaptive refinement.
int base_edge_samples(const PanoDims& dims, std::size_t corner_count);

}  // namespace panowarp
