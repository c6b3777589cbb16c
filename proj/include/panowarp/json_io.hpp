// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include <json.hpp>

namespace panowarp {

inline constexpr const char* kVersion = "0.1.0";

/// Throws Io when the file cannot be read, Format when it is not JSON.
nlohmann::json read_json(const std::filesystem::path& path);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace panowarp
