// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/layout_io.hpp"

#include <string>

#include "panowarp/error.hpp"
#include "panowarp/json_io.hpp"

namespace panowarp {

using nlohmann::json;

json layout_to_json(const Layout& layout, const CameraConfig& cam) {
  json corners = json::array();
  for (const LayoutCorner& c : layout.corners) {
    corners.push_back({{"u", c.pixel.u},
                       {"v", c.pixel.v},
                       {"kind", c.kind == CornerKind::Ceiling ? "ceiling" : "floor"}});
  }
  return {{"width", layout.dims.width},
          {"height", layout.dims.height},
          {"camera_height", cam.height},
          {"corners", std::move(corners)}};
}

LayoutDocument layout_from_json(const json& doc) {
  try {
    LayoutDocument out;
    if (!doc.is_object()) throw Error(ErrorKind::Format, "layout must be a JSON object");
    out.layout.dims = {doc.at("width").get<int>(), doc.at("height").get<int>()};
    out.camera.height = doc.at("camera_height").get<double>();
    const json& corners = doc.at("corners");
    if (!corners.is_array()) throw Error(ErrorKind::Format, "\"corners\" must be an array");
    for (const json& c : corners) {
      const std::string kind = c.at("kind").get<std::string>();
      if (kind != "ceiling" && kind != "floor") {
        throw Error(ErrorKind::Format, "unknown corner kind \"" + kind + "\"");
      }
      out.layout.corners.push_back(
          {{c.at("u").get<double>(), c.at("v").get<double>()},
           kind == "ceiling" ? CornerKind::Ceiling : CornerKind::Floor});
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Format, std::string("malformed layout: ") + e.what());
  }
}

LayoutDocument load_layout(const std::filesystem::path& path) {
  return layout_from_json(read_json(path));
}

void save_layout(const Layout& layout, const CameraConfig& cam, const std::filesystem::path& path,
                 const json& extra) {
  json doc = layout_to_json(layout, cam);
  for (const auto& [key, value] : extra.items()) doc[key] = value;
  write_json(doc, path);
}

}  // namespace panowarp
