// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "panowarp/scene_oracle.hpp"
#include "panowarp/splatting.hpp"

namespace panowarp {

struct MissingRateRow {
  double distance = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Unit horizontal direction at angle alpha from the forward axis toward +x.
Translation horizontal_translation(double distance, double alpha);

/// Renders the source at scene.camera and warps it with ground-truth depth
/// along `directions` random horizontal directions per distance. The same
/// direction set is reused for every distance. Throws CameraOutsideRoom if a
/// sampled target leaves the room.
std::vector<MissingRateRow> missing_rate_curve(const CuboidScene& scene,
                                               std::span<const double> distances, int directions,
                                               std::uint64_t seed, const PanoDims& dims,
                                               const SplatParams& params = {}, int threads = 0);

}  // namespace panowarp
