// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/dataset.hpp"

#include <cstdio>
#include <string>

#include "panowarp/error.hpp"
#include "panowarp/hole_analysis.hpp"
#include "panowarp/json_io.hpp"
#include "panowarp/layout_io.hpp"
#include "panowarp/random.hpp"

namespace panowarp {

using nlohmann::json;

namespace {

bool placeable(const CuboidScene& scene, const CartesianPoint& p) {
  return std::abs(p.x) <= 0.5 * scene.width - kWallClearance &&
         std::abs(p.y) <= 0.5 * scene.depth - kWallClearance && p.z >= kWallClearance &&
         p.z <= scene.height - kWallClearance;
}

std::string scene_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene_%03zu", index);
  return buf;
}

void make_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

DistanceRange distance_range(DatasetSplit split) {
  return split == DatasetSplit::Easy ? DistanceRange{0.2, 0.3} : DistanceRange{1.0, 2.0};
}

std::string to_string(DatasetSplit split) { return split == DatasetSplit::Easy ? "easy" : "hard"; }

DatasetSplit parse_split(const std::string& name) {
  if (name == "easy") return DatasetSplit::Easy;
  if (name == "hard") return DatasetSplit::Hard;
  throw Error(ErrorKind::InvalidArgument, "unknown set \"" + name + "\" (expected easy or hard)");
}

Translation sample_target(const CuboidScene& scene, DatasetSplit split, Rng& rng) {
  const DistanceRange range = distance_range(split);
  for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
    const double distance = rng.uniform(range.min, range.max);
    const double alpha = rng.uniform(0.0, 2.0 * kPi);
    const Translation t = horizontal_translation(distance, alpha);
    if (placeable(scene, scene.camera + t.as_point())) return t;
  }
  throw Error(ErrorKind::RoomTooSmall, "could not place a " + to_string(split) +
                                           " target inside the room after " +
                                           std::to_string(kMaxPlacementAttempts) + " attempts");
}

std::vector<CuboidScene> random_scenes(int count, std::uint64_t seed, TextureKind texture) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "scene count must be >= 1");
  Rng rng(seed);
  std::vector<CuboidScene> scenes;
  scenes.reserve(count);
  for (int i = 0; i < count; ++i) {
    CuboidScene s;
    s.width = rng.uniform(4.0, 8.0);
    s.depth = rng.uniform(4.0, 8.0);
    s.height = rng.uniform(2.6, 3.4);
    s.camera = {rng.uniform(-0.15, 0.15) * s.width, rng.uniform(-0.15, 0.15) * s.depth,
                rng.uniform(1.4, 1.8)};
    s.seed = rng.next();
    s.texture = make_texture(texture, s.seed);
    scenes.push_back(s);
  }
  return scenes;
}

json scene_to_json(const CuboidScene& scene) {
  json tex;
  if (const auto* sin_tex = std::get_if<SinusoidTexture>(&scene.texture)) {
    tex = {{"kind", "sinusoid"}, {"frequency", sin_tex->frequency}, {"phase", sin_tex->phase}};
  } else {
    const auto& checker = std::get<CheckerTexture>(scene.texture);
    tex = {{"kind", "checker"}, {"cell_size", checker.cell_size}, {"colors", checker.colors}};
  }
  return {{"room", {scene.width, scene.depth, scene.height}},
          {"camera", {scene.camera.x, scene.camera.y, scene.camera.z}},
          {"texture", std::move(tex)},
          {"seed", scene.seed}};
}

void save_view(const RenderedView& view, const std::filesystem::path& dir,
               const std::string& stem) {
  save_rgb(view.rgb, dir / (stem + ".png"));
  save_depth(view.depth, dir / (stem + ".depth.png"));
  save_layout(view.layout, view.camera, dir / (stem + ".layout.json"), {{"version", kVersion}});
}

json make_dataset(std::span<const CuboidScene> scenes, const DatasetOptions& options,
                  const std::filesystem::path& out_dir, const json& invocation) {
  require_panoramic(options.dims);
  if (options.targets_per_source < 1) {
    throw Error(ErrorKind::InvalidArgument, "targets per source must be >= 1");
  }
  for (const CuboidScene& s : scenes) s.validate();

  // Every translation is drawn before anything touches the disk.
  Rng rng(options.seed);
  std::vector<std::vector<Translation>> translations;
  for (const CuboidScene& s : scenes) {
    auto& ts = translations.emplace_back();
    for (int k = 0; k < options.targets_per_source; ++k) {
      ts.push_back(sample_target(s, options.split, rng));
    }
  }

  make_directory(out_dir);
  json scene_list = json::array();
  json pairs = json::array();
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const CuboidScene& scene = scenes[i];
    const std::string id = scene_id(i);
    make_directory(out_dir / id);
    save_view(render_panorama(scene, scene.camera, options.dims), out_dir / id, "source");

    json entry = scene_to_json(scene);
    entry["id"] = id;
    scene_list.push_back(std::move(entry));

    for (int k = 0; k < options.targets_per_source; ++k) {
      const Translation& t = translations[i][k];
      const std::string stem = "target_" + std::to_string(k);
      save_view(render_panorama(scene, scene.camera + t.as_point(), options.dims), out_dir / id,
                stem);
      pairs.push_back({{"scene", id},
                       {"source", id + "/source.png"},
                       {"source_depth", id + "/source.depth.png"},
                       {"source_layout", id + "/source.layout.json"},
                       {"target", id + "/" + stem + ".png"},
                       {"target_depth", id + "/" + stem + ".depth.png"},
                       {"target_layout", id + "/" + stem + ".layout.json"},
                       {"t", {t.tx, t.ty, t.tz}},
                       {"distance", t.length()}});
    }
  }

  json manifest = {{"version", kVersion},
                   {"seed", options.seed},
                   {"set", to_string(options.split)},
                   {"size", {options.dims.width, options.dims.height}},
                   {"targets_per_source", options.targets_per_source},
                   {"scene", std::move(scene_list)},
                   {"pairs", std::move(pairs)}};
  if (!invocation.empty()) manifest["invocation"] = invocation;
  write_json(manifest, out_dir / "manifest.json");
  return manifest;
}

}  // namespace panowarp
