// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace nores {

/// Engine behind every random stream. Seeds are always explicit.
using Engine = std::mt19937_64;

/// 64-bit FNV-1a; stable across platforms, used for stream names and input
/// file fingerprints.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
std::uint64_t fnv1a64(std::string_view text);

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives the seed of a named sub-stream from a root seed. Distinct
/// (stream, index) pairs give statistically independent engines, so
/// ensemble members can be generated in any order.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream, std::uint64_t index = 0);

inline Engine make_engine(std::uint64_t root, std::string_view stream, std::uint64_t index = 0) {
  return Engine(derive_seed(root, stream, index));
}

}  // namespace nores
