// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/hole_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "panowarp/error.hpp"
#include "panowarp/random.hpp"

namespace panowarp {

Translation horizontal_translation(double distance, double alpha) {
  return {distance * std::sin(alpha), distance * std::cos(alpha), 0.0};
}

std::vector<MissingRateRow> missing_rate_curve(const CuboidScene& scene,
                                               std::span<const double> distances, int directions,
                                               std::uint64_t seed, const PanoDims& dims,
                                               const SplatParams& params, int threads) {
  scene.validate();
  params.validate();
  if (directions < 1) throw Error(ErrorKind::InvalidArgument, "need at least one direction");
  for (double d : distances) {
    if (!(d >= 0.0)) throw Error(ErrorKind::InvalidArgument, "distances must be non-negative");
  }

  Rng rng(seed);
  std::vector<double> alphas(directions);
  for (double& a : alphas) a = rng.uniform(0.0, 2.0 * kPi);

  for (double d : distances) {
    for (double a : alphas) {
      const Translation t = horizontal_translation(d, a);
      if (!scene.contains(scene.camera + t.as_point())) {
        throw Error(ErrorKind::CameraOutsideRoom,
                    "translation of " + std::to_string(d) + " m leaves the room");
      }
    }
  }

  const RenderedView source = render_panorama(scene, scene.camera, dims, threads);
  std::vector<MissingRateRow> rows;
  rows.reserve(distances.size());
  for (double d : distances) {
    MissingRateRow row{d, 0.0, 1.0, 0.0};
    for (double a : alphas) {
      const WarpOutput out =
          forward_splat(source.rgb, source.depth, horizontal_translation(d, a), params, threads);
      const double rate = missing_rate(out);
      row.mean += rate;
      row.min = std::min(row.min, rate);
      row.max = std::max(row.max, rate);
    }
    row.mean /= directions;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace panowarp
