// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "nores/spectral.hpp"

namespace nores::qsum {

/// n choose k, or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k);

enum class Strategy {
  kMaterializeSort,  // fill every sum, then sort
  kHeapMerge,        // k-way merge of the per-prefix sorted streams
};

struct QSumOptions {
  std::uint64_t cap = 200'000'000;
  bool compensated = false;  // Neumaier summation instead of plain left-to-right
  Strategy strategy = Strategy::kMaterializeSort;
};

/// Sums E_{i1} + ... + E_{iq} over strictly increasing index tuples
/// i1 < ... < iq, sorted ascending. Repeated indices are excluded, so the
/// permutation symmetry of the q-fold tensor-sum Hamiltonian is resolved and
/// count() == C(N, q).
struct QSumSpectrum {
  int q = 1;
  nlohmann::json base = nlohmann::json::object();
  std::vector<double> sums;

  std::size_t count() const noexcept { return sums.size(); }
};

/// Throws ValidationError if q < 1, q > N, or C(N, q) exceeds options.cap.
QSumSpectrum build_qsum(const spectral::Spectrum& spectrum, int q, const QSumOptions& options = {});

/// Sum of energies[indices[0]] + energies[indices[1]] + ... accumulated in
/// index order; the single definition every q-sum path uses.
double tuple_sum(std::span<const double> energies, std::span<const std::uint32_t> indices,
                 bool compensated = false);

using IndexTuple = std::vector<std::uint32_t>;

struct TupleSum {
  IndexTuple indices;
  double sum = 0.0;
};

/// All strictly increasing q-tuples whose sum lies in [lo, hi], found by
/// depth-first enumeration with bound pruning on the sorted spectrum.
/// Output is ordered lexicographically by tuple.
std::vector<TupleSum> qsum_index_tuples(const spectral::Spectrum& spectrum, int q, double lo, double hi,
                                        bool compensated = false);

}  // namespace nores::qsum
