// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/json_io.hpp"

#include <fstream>
#include <string>

#include "panowarp/error.hpp"

namespace panowarp {

using nlohmann::json;

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Format, path.string() + ": " + e.what());
  }
}

void write_json(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

}  // namespace panowarp
