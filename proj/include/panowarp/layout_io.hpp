// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include <json.hpp>

#include "panowarp/layout.hpp"

namespace panowarp {

struct LayoutDocument {
  Layout layout;
  CameraConfig camera;
};

// {"width", "height", "camera_height", "corners": [{"u", "v", "kind"}]}
// "kind" is "ceiling" or "floor". Unknown top-level fields are ignored.
nlohmann::json layout_to_json(const Layout& layout, const CameraConfig& cam);
/// Throws Format on missing or mistyped fields.
LayoutDocument layout_from_json(const nlohmann::json& doc);

LayoutDocument load_layout(const std::filesystem::path& path);
/// `extra` fields are merged into the top-level object.
void save_layout(const Layout& layout, const CameraConfig& cam, const std::filesystem::path& path,
                 const nlohmann::json& extra = nlohmann::json::object());

}  // namespace panowarp
