// Copyright 2026 The hafmoments Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hafmoments {

/// Reproducibility record written next to every CLI output file.
struct RunManifest {
  std::vector<std::string> command_line;
  std::vector<std::uint64_t> seeds;
  nlohmann::json caps = nlohmann::json::object();
  /// Built-in consistency checks run alongside the command, if any.
  nlohmann::json checks = nlohmann::json::object();
  std::string version;
  double wall_seconds = 0.0;
  /// Hex SHA-256 of the output bytes.
  std::string output_checksum;
};

void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

std::string sha256_hex(std::string_view bytes);

/// `<output>.manifest.json`
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

/// Writes `contents` to `output` and the manifest beside it, filling in the
/// checksum. Throws std::runtime_error if either file cannot be written.
void write_with_manifest(const std::filesystem::path& output,
                         std::string_view contents, RunManifest manifest);

}  // namespace hafmoments
