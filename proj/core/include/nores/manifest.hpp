// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace nores {

/// Provenance record written next to every output as `<output>.manifest.json`.
/// Outputs carry only the manifest's file name, so wall time and host details
/// never leak into summaries.
struct RunManifest {
  std::vector<std::string> command_line;
  std::map<std::string, std::uint64_t> seeds;
  nlohmann::json versions = nlohmann::json::object();
  std::map<std::string, std::string> input_hashes;  // path -> fnv1a64 hex
  std::vector<std::string> outputs;
  double wall_time_seconds = 0.0;
};

void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

/// Library, Eigen and compiler versions.
nlohmann::json build_versions();

/// FNV-1a of the file bytes as 16 hex digits.
std::string hash_file(const std::filesystem::path& path);

std::filesystem::path manifest_path_for(const std::filesystem::path& output);

}  // namespace nores
