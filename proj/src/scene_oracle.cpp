// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/scene_oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "panowarp/error.hpp"
#include "panowarp/random.hpp"
#include "parallel.hpp"

namespace panowarp {

namespace {

// In-plane coordinates of a hit point on its face.
std::pair<double, double> face_coords(Face face, const CartesianPoint& p) {
  switch (face) {
    case Face::Left:
    case Face::Right:
      return {p.y, p.z};
    case Face::Back:
    case Face::Front:
      return {p.x, p.z};
    case Face::Floor:
    case Face::Ceiling:
      return {p.x, p.y};
  }
  return {0.0, 0.0};
}

Color shade_sinusoid(const SinusoidTexture& tex, Face face, double s, double t) {
  const double phase = tex.phase[static_cast<int>(face)];
  const double k = 2.0 * kPi * tex.frequency;
  Color c{};
  for (int ch = 0; ch < 3; ++ch) {
    c[ch] = 0.5 + 0.2 * std::sin(k * s + phase + ch * 2.0 * kPi / 3.0) +
            0.2 * std::cos(k * t + 0.5 * phase + ch * kPi / 3.0);
  }
  return c;
}

Color shade_checker(const CheckerTexture& tex, Face face, double s, double t) {
  const long long cell = static_cast<long long>(std::floor(s / tex.cell_size)) +
                         static_cast<long long>(std::floor(t / tex.cell_size));
  return tex.colors[static_cast<int>(face)][cell & 1];
}

}  // namespace

Texture make_texture(TextureKind kind, std::uint64_t seed) {
  Rng rng(seed);
  if (kind == TextureKind::Sinusoid) {
    SinusoidTexture tex;
    for (double& p : tex.phase) p = rng.uniform(0.0, 2.0 * kPi);
    return tex;
  }
  CheckerTexture tex;
  for (auto& pair : tex.colors) {
    for (Color& c : pair) {
      for (double& ch : c) ch = rng.uniform(0.1, 0.9);
    }
  }
  return tex;
}

bool CuboidScene::contains(const CartesianPoint& p) const {
  return std::abs(p.x) < 0.5 * width && std::abs(p.y) < 0.5 * depth && p.z > 0.0 && p.z < height;
}

void CuboidScene::validate() const {
  if (!(width > 0.0) || !(depth > 0.0) || !(height > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "room extents must be positive");
  }
  if (!contains(camera)) {
    throw Error(ErrorKind::CameraOutsideRoom, "scene camera is not strictly inside the room");
  }
}

RayHit cast_ray(const CuboidScene& scene, const CartesianPoint& origin,
                const CartesianPoint& direction) {
  const double lo[3] = {-0.5 * scene.width, -0.5 * scene.depth, 0.0};
  const double hi[3] = {0.5 * scene.width, 0.5 * scene.depth, scene.height};
  const double o[3] = {origin.x, origin.y, origin.z};
  const double d[3] = {direction.x, direction.y, direction.z};
  const Face neg[3] = {Face::Left, Face::Back, Face::Floor};
  const Face pos[3] = {Face::Right, Face::Front, Face::Ceiling};

  RayHit hit;
  hit.distance = std::numeric_limits<double>::infinity();
  int axis = -1;
  for (int a = 0; a < 3; ++a) {
    if (d[a] == 0.0) continue;
    const double plane = d[a] > 0.0 ? hi[a] : lo[a];
    const double t = (plane - o[a]) / d[a];
    if (t < hit.distance) {
      hit.distance = t;
      hit.face = d[a] > 0.0 ? pos[a] : neg[a];
      axis = a;
    }
  }
  if (axis < 0) throw Error(ErrorKind::InvalidArgument, "ray direction is zero");
  hit.point = origin + hit.distance * direction;
  // Snap onto the face plane so the hit satisfies the box equation exactly.
  const double plane = d[axis] > 0.0 ? hi[axis] : lo[axis];
  if (axis == 0) hit.point.x = plane;
  if (axis == 1) hit.point.y = plane;
  if (axis == 2) hit.point.z = plane;
  return hit;
}

Color shade(const CuboidScene& scene, const RayHit& hit) {
  const auto [s, t] = face_coords(hit.face, hit.point);
  if (const auto* sin_tex = std::get_if<SinusoidTexture>(&scene.texture)) {
    return shade_sinusoid(*sin_tex, hit.face, s, t);
  }
  return shade_checker(std::get<CheckerTexture>(scene.texture), hit.face, s, t);
}

std::array<Junction3D, 4> room_junctions(const CuboidScene& scene, const CartesianPoint& cam_pos) {
  const double hx = 0.5 * scene.width;
  const double hy = 0.5 * scene.depth;
  const double xs[4] = {-hx, hx, hx, -hx};
  const double ys[4] = {-hy, -hy, hy, hy};
  std::array<Junction3D, 4> out{};
  for (int i = 0; i < 4; ++i) {
    const double x = xs[i] - cam_pos.x;
    const double y = ys[i] - cam_pos.y;
    out[i] = {{x, y, scene.height - cam_pos.z}, {x, y, -cam_pos.z}};
  }
  return out;
}

RenderedView render_panorama(const CuboidScene& scene, const CartesianPoint& cam_pos,
                             const PanoDims& dims, int threads) {
  require_panoramic(dims);
  if (!(scene.width > 0.0) || !(scene.depth > 0.0) || !(scene.height > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "room extents must be positive");
  }
  if (!scene.contains(cam_pos)) {
    throw Error(ErrorKind::CameraOutsideRoom, "camera (" + std::to_string(cam_pos.x) + ", " +
                                                  std::to_string(cam_pos.y) + ", " +
                                                  std::to_string(cam_pos.z) +
                                                  ") is not strictly inside the room");
  }
  ImageBuffer rgb(dims, 3);
  DepthBuffer depth(dims, 0.0);
  const int workers = detail::resolve_thread_count(threads, dims.height);
  detail::for_each_row_chunk(dims.height, workers, [&](int, int begin, int end) {
    for (int v = begin; v < end; ++v) {
      for (int u = 0; u < dims.width; ++u) {
        const Direction dir = pix_to_sph({u + 0.5, v + 0.5}, dims);
        const CartesianPoint ray = sph_to_cart({dir.phi, dir.theta, 1.0});
        const RayHit hit = cast_ray(scene, cam_pos, ray);
        depth.at(u, v) = hit.distance;
        const Color c = shade(scene, hit);
        for (int ch = 0; ch < 3; ++ch) rgb.at(u, v, ch) = c[ch];
      }
    }
  });
  const auto junctions = room_junctions(scene, cam_pos);
  return {std::move(rgb), std::move(depth), project_layout(junctions, dims),
          CameraConfig{cam_pos.z}};
}

}  // namespace panowarp
