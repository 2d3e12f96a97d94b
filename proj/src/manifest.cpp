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

#include "hafmoments/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace hafmoments {

void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"command_line", m.command_line},
                     {"seeds", m.seeds},
                     {"caps", m.caps},
                     {"checks", m.checks},
                     {"version", m.version},
                     {"wall_seconds", m.wall_seconds},
                     {"output_sha256", m.output_checksum}};
}

void from_json(const nlohmann::json& j, RunManifest& m) {
  m.command_line = j.at("command_line").get<std::vector<std::string>>();
  m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  m.caps = j.at("caps");
  m.checks = j.value("checks", nlohmann::json::object());
  m.version = j.at("version").get<std::string>();
  m.wall_seconds = j.at("wall_seconds").get<double>();
  m.output_checksum = j.at("output_sha256").get<std::string>();
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  auto path = output;
  path += ".manifest.json";
  return path;
}

namespace {

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

void write_with_manifest(const std::filesystem::path& output, std::string_view contents,
                         RunManifest manifest) {
  write_file(output, contents);
  manifest.output_checksum = sha256_hex(contents);
  write_file(manifest_path_for(output), nlohmann::json(manifest).dump(2) + "\n");
}

}  // namespace hafmoments
