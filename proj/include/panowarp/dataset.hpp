// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "panowarp/random.hpp"
#include "panowarp/scene_oracle.hpp"

namespace panowarp {

enum class DatasetSplit { Easy, Hard };

struct DistanceRange {
  double min = 0.0;
  double max = 0.0;
};

/// Easy targets move 0.2-0.3 m, hard targets 1.0-2.0 m.
DistanceRange distance_range(DatasetSplit split);
std::string to_string(DatasetSplit split);
/// Throws InvalidArgument for anything but "easy" or "hard".
DatasetSplit parse_split(const std::string& name);

/// Minimum distance kept between a sampled camera and any room face.
inline constexpr double kWallClearance = 0.05;
inline constexpr int kMaxPlacementAttempts = 100;

struct DatasetOptions {
  DatasetSplit split = DatasetSplit::Easy;
  int targets_per_source = 3;
  std::uint64_t seed = 0;
  PanoDims dims{512, 256};
};

/// Draws a horizontal translation for `scene` in the split's distance range
/// along a uniform random direction. Throws RoomTooSmall after
/// kMaxPlacementAttempts rejected samples.
Translation sample_target(const CuboidScene& scene, DatasetSplit split, Rng& rng);

/// Random rooms (4-8 m wide/deep, 2.6-3.4 m high) with the camera near the
/// middle at 1.4-1.8 m.
std::vector<CuboidScene> random_scenes(int count, std::uint64_t seed, TextureKind texture);

nlohmann::json scene_to_json(const CuboidScene& scene);

/// Writes `<out_dir>/<scene_id>/source.*` and `target_<k>.*` for every scene
/// and `<out_dir>/manifest.json`; returns the manifest. Scene ids are
/// scene_000, scene_001, ...
nlohmann::json make_dataset(std::span<const CuboidScene> scenes, const DatasetOptions& options,
                            const std::filesystem::path& out_dir,
                            const nlohmann::json& invocation = nlohmann::json::object());

/// Writes rgb (.png), depth (.depth.png) and layout (.layout.json) views
/// sharing the path stem `stem`.
void save_view(const RenderedView& view, const std::filesystem::path& dir, const std::string& stem);

}  // namespace panowarp
