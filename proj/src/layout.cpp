// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "panowarp/error.hpp"

namespace panowarp {

namespace {

constexpr double kBoundaryClearance = 1e-9;  // meters
constexpr double kMaxSampleGap = 0.5;        // pixels between consecutive edge samples

double longitude_gap(double a, double b) { return std::abs(wrap_phi(a - b)); }

std::string corner_label(std::size_t index) {
  return "corner " + std::to_string(index);
}

void require_valid(const Layout& layout) {
  const auto problems = validate_layout(layout);
  if (!problems.empty()) {
    std::ostringstream msg;
    msg << problems.size() << " violation(s); first: " << problems.front();
    throw Error(ErrorKind::InvalidLayout, msg.str());
  }
}

double point_segment_distance(double px, double py, const CartesianPoint& a,
                              const CartesianPoint& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double s = len2 > 0.0 ? ((px - a.x) * dx + (py - a.y) * dy) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::hypot(px - (a.x + s * dx), py - (a.y + s * dy));
}

bool strictly_inside_floor(const std::vector<Junction3D>& room, double px, double py) {
  bool inside = false;
  const std::size_t n = room.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const CartesianPoint& a = room[i].floor;
    const CartesianPoint& b = room[j].floor;
    if (point_segment_distance(px, py, a, b) <= kBoundaryClearance) return false;
    if ((a.y > py) != (b.y > py)) {
      const double cross_x = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y);
      if (px < cross_x) inside = !inside;
    }
  }
  return inside;
}

// Stamps an isotropic truncated Gaussian centred on the pixel containing p.
class GaussianStamp {
 public:
  explicit GaussianStamp(double sigma) : radius_(static_cast<int>(std::floor(3.0 * sigma))) {
    const int side = 2 * radius_ + 1;
    kernel_.assign(static_cast<std::size_t>(side) * side, 0.0);
    const double cutoff = 9.0 * sigma * sigma;
    for (int dv = -radius_; dv <= radius_; ++dv) {
      for (int du = -radius_; du <= radius_; ++du) {
        const double d2 = static_cast<double>(du * du + dv * dv);
        if (d2 <= cutoff) {
          kernel_[static_cast<std::size_t>(dv + radius_) * side + (du + radius_)] =
              std::exp(-d2 / (2.0 * sigma * sigma));
        }
      }
    }
  }

  void apply(ImageBuffer& map, int channel, int pu, int pv) const {
    const int width = map.width();
    const int height = map.height();
    const int side = 2 * radius_ + 1;
    for (int dv = -radius_; dv <= radius_; ++dv) {
      const int row = pv + dv;
      if (row < 0 || row >= height) continue;
      for (int du = -radius_; du <= radius_; ++du) {
        const double k = kernel_[static_cast<std::size_t>(dv + radius_) * side + (du + radius_)];
        if (k == 0.0) continue;
        int col = (pu + du) % width;
        if (col < 0) col += width;
        double& cell = map.at(col, row, channel);
        cell = std::max(cell, k);
      }
    }
  }

 private:
  int radius_;
  std::vector<double> kernel_;
};

struct PixelIndex {
  int u = 0;
  int v = 0;
  friend bool operator==(const PixelIndex&, const PixelIndex&) = default;
};

PixelIndex containing_pixel(const PixelCoord& p, const PanoDims& dims) {
  int u = static_cast<int>(std::floor(p.u));
  int v = static_cast<int>(std::floor(p.v));
  u = std::clamp(u, 0, dims.width - 1);
  v = std::clamp(v, 0, dims.height - 1);
  return {u, v};
}

PixelCoord project(const CartesianPoint& p, const PanoDims& dims) {
  const SphericalCoord s = cart_to_sph(p);
  return sph_to_pix({s.phi, s.theta}, dims);
}

double pixel_gap(const PixelCoord& a, const PixelCoord& b, int width) {
  double du = std::abs(a.u - b.u);
  du = std::min(du, width - du);
  return std::hypot(du, a.v - b.v);
}

void draw_segment(ImageBuffer& map, int channel, const CartesianPoint& a, const CartesianPoint& b,
                  int base_samples, const GaussianStamp& stamp) {
  const PanoDims& dims = map.dims();
  auto at = [&](double s) { return a + s * (b - a); };
  std::optional<PixelIndex> last;
  auto stamp_point = [&](const PixelCoord& p) {
    const PixelIndex idx = containing_pixel(p, dims);
    if (last && *last == idx) return;
    stamp.apply(map, channel, idx.u, idx.v);
    last = idx;
  };

  const int n = base_samples;
  double prev_s = 0.0;
  PixelCoord prev = project(a, dims);
  stamp_point(prev);
  for (int k = 1; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    const PixelCoord cur = project(at(s), dims);
    const double gap = pixel_gap(prev, cur, dims.width);
    if (gap > kMaxSampleGap) {
      const int pieces = static_cast<int>(std::ceil(gap / kMaxSampleGap));
      for (int i = 1; i < pieces; ++i) {
        stamp_point(project(at(prev_s + (s - prev_s) * i / pieces), dims));
      }
    }
    stamp_point(cur);
    prev = cur;
    prev_s = s;
  }
}

}  // namespace

std::vector<std::string> validate_layout(const Layout& layout) {
  std::vector<std::string> problems;
  const PanoDims& dims = layout.dims;
  if (!dims.is_panoramic()) {
    problems.push_back("dimensions " + std::to_string(dims.width) + "x" +
                       std::to_string(dims.height) + " are not a 2:1 panorama");
    return problems;
  }
  const std::size_t n = layout.corners.size();
  if (n % 2 != 0) problems.push_back("corner count " + std::to_string(n) + " is odd");
  if (n < 8) problems.push_back("corner count " + std::to_string(n) + " is below 8");

  for (std::size_t i = 0; i < n; ++i) {
    const LayoutCorner& c = layout.corners[i];
    if (!std::isfinite(c.pixel.u) || !std::isfinite(c.pixel.v)) {
      problems.push_back(corner_label(i) + " has a non-finite coordinate");
      continue;
    }
    if (c.pixel.u < 0.0 || c.pixel.u >= dims.width) {
      problems.push_back(corner_label(i) + " u outside [0, W)");
    }
    if (c.pixel.v < 0.0 || c.pixel.v > dims.height) {
      problems.push_back(corner_label(i) + " v outside [0, H]");
    }
    const double theta = pix_to_sph(c.pixel, dims).theta;
    if (c.kind == CornerKind::Ceiling && !(theta > 0.0)) {
      problems.push_back(corner_label(i) + " is a ceiling corner below the horizon");
    }
    if (c.kind == CornerKind::Floor && !(theta < 0.0)) {
      problems.push_back(corner_label(i) + " is a floor corner above the horizon");
    }
  }
  if (!problems.empty() || n % 2 != 0) return problems;

  double previous_phi = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const LayoutCorner& ceiling = layout.corners[2 * j];
    const LayoutCorner& floor = layout.corners[2 * j + 1];
    if (ceiling.kind != CornerKind::Ceiling || floor.kind != CornerKind::Floor) {
      problems.push_back("junction " + std::to_string(j) + " is not a (ceiling, floor) pair");
      continue;
    }
    const double phi_c = pix_to_sph(ceiling.pixel, dims).phi;
    const double phi_f = pix_to_sph(floor.pixel, dims).phi;
    if (longitude_gap(phi_c, phi_f) > kMaxPairLongitudeGap) {
      problems.push_back("junction " + std::to_string(j) + " corners disagree in longitude");
    }
    if (!(phi_f > previous_phi)) {
      problems.push_back("junction " + std::to_string(j) + " is not sorted by longitude");
    }
    previous_phi = phi_f;
  }
  return problems;
}

Layout project_layout(std::span<const Junction3D> junctions, const PanoDims& dims) {
  struct Projected {
    PixelCoord ceiling;
    PixelCoord floor;
  };
  std::vector<Projected> projected;
  projected.reserve(junctions.size());
  for (const Junction3D& j : junctions) {
    projected.push_back({project(j.ceiling, dims), project(j.floor, dims)});
  }
  std::stable_sort(projected.begin(), projected.end(),
                   [](const Projected& a, const Projected& b) { return a.floor.u < b.floor.u; });
  Layout layout{dims, {}};
  layout.corners.reserve(2 * projected.size());
  for (const Projected& p : projected) {
    layout.corners.push_back({p.ceiling, CornerKind::Ceiling});
    layout.corners.push_back({p.floor, CornerKind::Floor});
  }
  return layout;
}

std::vector<Junction3D> lift_junctions(const Layout& layout, const CameraConfig& cam) {
  if (!(cam.height > 0.0)) throw Error(ErrorKind::InvalidArgument, "camera height must be positive");
  require_valid(layout);
  std::vector<Junction3D> out;
  out.reserve(layout.junction_count());
  for (std::size_t j = 0; j < layout.junction_count(); ++j) {
    const Direction floor_dir = pix_to_sph(layout.floor(j).pixel, layout.dims);
    const Direction ceiling_dir = pix_to_sph(layout.ceiling(j).pixel, layout.dims);
    if (floor_dir.theta >= -kMinFloorDepression) {
      throw Error(ErrorKind::DegenerateCorner,
                  "floor corner of junction " + std::to_string(j) + " is at or above the horizon");
    }
    const double range = cam.height / std::tan(-floor_dir.theta);
    const double x = range * std::sin(floor_dir.phi);
    const double y = range * std::cos(floor_dir.phi);
    out.push_back({{x, y, range * std::tan(ceiling_dir.theta)}, {x, y, -cam.height}});
  }
  return out;
}

std::vector<CartesianPoint> lift_layout(const Layout& layout, const CameraConfig& cam) {
  std::vector<CartesianPoint> points;
  for (const Junction3D& j : lift_junctions(layout, cam)) {
    points.push_back(j.ceiling);
    points.push_back(j.floor);
  }
  return points;
}

TransformedLayout transform_layout(const Layout& layout, const Translation& t,
                                   const CameraConfig& cam) {
  std::vector<Junction3D> room = lift_junctions(layout, cam);
  if (t.tz <= -cam.height) {
    throw Error(ErrorKind::CameraBelowFloor, "translated camera is at or below the floor");
  }
  double lowest_ceiling = std::numeric_limits<double>::infinity();
  for (const Junction3D& j : room) lowest_ceiling = std::min(lowest_ceiling, j.ceiling.z);
  if (t.tz >= lowest_ceiling) {
    throw Error(ErrorKind::CameraAboveCeiling, "translated camera is at or above the ceiling");
  }
  if (!strictly_inside_floor(room, t.tx, t.ty)) {
    throw Error(ErrorKind::CameraOutsideRoom, "translated camera leaves the floor polygon");
  }
  for (Junction3D& j : room) {
    j.ceiling = transfer_point(j.ceiling, t);
    j.floor = transfer_point(j.floor, t);
  }
  return {project_layout(room, layout.dims), CameraConfig{cam.height + t.tz}};
}

int base_edge_samples(const PanoDims& dims, std::size_t corner_count) {
  const std::size_t n = std::max<std::size_t>(corner_count, 1);
  int samples = std::max(256, static_cast<int>((4 * static_cast<std::size_t>(dims.width) + n - 1) / n));
  // An even count keeps the midpoint of a symmetric edge off the sample set.
  if (samples % 2 != 0) ++samples;
  return samples;
}

LayoutMaps rasterize_layout(const Layout& layout, const CameraConfig& cam, const PanoDims& dims,
                            double sigma) {
  require_panoramic(dims);
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
  const std::vector<Junction3D> room = lift_junctions(layout, cam);
  LayoutMaps maps{ImageBuffer(dims, 3), ImageBuffer(dims, 1)};
  const GaussianStamp stamp(sigma);
  const int samples = base_edge_samples(dims, layout.corners.size());

  const std::size_t n = room.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Junction3D& a = room[j];
    const Junction3D& b = room[(j + 1) % n];
    draw_segment(maps.boundary, 0, a.ceiling, b.ceiling, samples, stamp);
    draw_segment(maps.boundary, 1, a.ceiling, a.floor, samples, stamp);
    draw_segment(maps.boundary, 2, a.floor, b.floor, samples, stamp);
  }
  if (dims == layout.dims) {
    for (const LayoutCorner& c : layout.corners) {
      const PixelIndex idx = containing_pixel(c.pixel, dims);
      stamp.apply(maps.corner, 0, idx.u, idx.v);
    }
  } else {
    for (const Junction3D& j : room) {
      for (const CartesianPoint& p : {j.ceiling, j.floor}) {
        const PixelIndex idx = containing_pixel(project(p, dims), dims);
        stamp.apply(maps.corner, 0, idx.u, idx.v);
      }
    }
  }
  return maps;
}

}  // namespace panowarp
