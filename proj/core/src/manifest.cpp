// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>

#include <Eigen/Core>

#include "nores/errors.hpp"
#include "nores/random.hpp"
#include "nores/version.hpp"

namespace nores {

void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"command_line", m.command_line},
                     {"seeds", m.seeds},
                     {"versions", m.versions},
                     {"input_hashes", m.input_hashes},
                     {"outputs", m.outputs},
                     {"wall_time_seconds", m.wall_time_seconds}};
}

void from_json(const nlohmann::json& j, RunManifest& m) {
  j.at("command_line").get_to(m.command_line);
  j.at("seeds").get_to(m.seeds);
  m.versions = j.at("versions");
  j.at("input_hashes").get_to(m.input_hashes);
  j.at("outputs").get_to(m.outputs);
  j.at("wall_time_seconds").get_to(m.wall_time_seconds);
}

nlohmann::json build_versions() {
  return nlohmann::json{
      {"nores", std::string(kVersion)},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
#if defined(__VERSION__)
      {"compiler", std::string(__VERSION__)},
#endif
  };
}

std::string hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cli", "cannot read " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  auto p = output;
  p += ".manifest.json";
  return p;
}

}  // namespace nores
