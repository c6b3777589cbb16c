// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <variant>

#include "panowarp/imaging.hpp"
#include "panowarp/layout.hpp"
#include "panowarp/sphere_geometry.hpp"

namespace panowarp {

using Color = std::array<double, 3>;

enum class Face { Left, Right, Back, Front, Floor, Ceiling };
inline constexpr int kFaceCount = 6;

struct CheckerTexture {
  double cell_size = 0.5;  // meters
  std::array<std::array<Color, 2>, kFaceCount> colors{};
};

struct SinusoidTexture {
  double frequency = 1.0;  // cycles per meter
  std::array<double, kFaceCount> phase{};
};

using Texture = std::variant<CheckerTexture, SinusoidTexture>;

enum class TextureKind { Checker, Sinusoid };

/// Per-face colors or phases drawn deterministically from `seed`.
Texture make_texture(TextureKind kind, std::uint64_t seed);

/// Axis-aligned room with the origin at the floor centre: x in [-w/2, w/2],
/// y in [-d/2, d/2], z in [0, h].
struct CuboidScene {
  double width = 4.0;
  double depth = 4.0;
  double height = 3.0;
  CartesianPoint camera{0.0, 0.0, 1.5};
  Texture texture = SinusoidTexture{};
  std::uint64_t seed = 0;

  bool contains(const CartesianPoint& p) const;
  /// Throws InvalidArgument on non-positive extents, CameraOutsideRoom when
  /// the camera is not strictly inside.
  void validate() const;
};

struct RayHit {
  double distance = 0.0;
  Face face = Face::Front;
  CartesianPoint point;  // room frame
};

/// Intersection of a ray from an interior point with the room shell.
/// `direction` must be unit length.
RayHit cast_ray(const CuboidScene& scene, const CartesianPoint& origin,
                const CartesianPoint& direction);

Color shade(const CuboidScene& scene, const RayHit& hit);

/// The four wall-wall junctions as seen from `cam_pos` (camera frame).
std::array<Junction3D, 4> room_junctions(const CuboidScene& scene, const CartesianPoint& cam_pos);

struct RenderedView {
  ImageBuffer rgb;
  DepthBuffer depth;
  Layout layout;
  CameraConfig camera;
};

/// Renders RGB, exact radial depth and the exact layout at `cam_pos`, one
/// sample per pixel centre.
RenderedView render_panorama(const CuboidScene& scene, const CartesianPoint& cam_pos,
                             const PanoDims& dims, int threads = 0);

}  // namespace panowarp
