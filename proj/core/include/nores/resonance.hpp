// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "nores/qsum.hpp"
#include "nores/spectral.hpp"
#include "nores/stats.hpp"

namespace nores::resonance {

/// Two distinct index sets of size q whose energy sums agree within the
/// tolerance. Tuples are strictly increasing and `first` < `second`
/// lexicographically.
struct ViolationPair {
  qsum::IndexTuple first;
  qsum::IndexTuple second;
  double gap = 0.0;  // |sum(first) - sum(second)|
};

/// Violations of the q no-resonance condition. A cluster of m mutually
/// equal sums contributes C(m, 2) pairs.
struct ViolationSet {
  int q = 1;
  double tolerance = 0.0;
  std::vector<ViolationPair> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
};

/// 1e-12 times the spectral width.
double default_tolerance(const spectral::Spectrum& spectrum);

/// Sorts the q-sum spectrum, scans runs of consecutive gaps <= tol, and
/// resolves each run back to index tuples. tol == 0 means exact equality.
ViolationSet find_violations(const spectral::Spectrum& spectrum, int q, double tol,
                             const qsum::QSumOptions& options = {});

struct ViolatorMultiplicity {
  std::size_t max_multiplicity = 0;  // N_{q,L}: max occurrences over all tuple slots
  std::size_t max_first_slot = 0;    // same, counting only the first slot of each tuple
  std::map<std::uint32_t, std::size_t> counts;
};

ViolatorMultiplicity exceptional_multiplicity(const ViolationSet& violations);

/// Number of consecutive gaps strictly below eps in a sorted sequence.
std::size_t pseudo_violation_count(std::span<const double> sorted_sums, double eps);

inline constexpr std::size_t kMaxGapSpectrum = 3000;

/// N(eps) = max_E |{(k, l) : k > l, E_k - E_l in [E, E + eps)}|, by a sliding
/// window over the sorted list of all N(N-1)/2 gaps.
std::size_t n_epsilon(const spectral::Spectrum& spectrum, double eps);

/// |S| / 2^L * (1 + 2^-L)^(|S| - 1), evaluated in log space.
double expected_exceptional(std::uint64_t violations, int L);

/// Monte Carlo of the uniform-index counting model: each trial draws |S|
/// indices uniformly from 2^L values and records 2^-L sum_v K_v 2^(K_v - 1),
/// where K_v is how often value v was drawn. That statistic is the number of
/// (value, slot-subset) configurations the closed form counts, so its mean
/// equals expected_exceptional exactly.
stats::MeanEstimate monte_carlo_expected_exceptional(std::uint64_t violations, int L, std::size_t trials,
                                                     std::uint64_t seed);

}  // namespace nores::resonance
