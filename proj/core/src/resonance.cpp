// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "nores/errors.hpp"
#include "nores/random.hpp"

namespace nores::resonance {
namespace {

constexpr std::string_view kModule = "resonance";

}  // namespace

double default_tolerance(const spectral::Spectrum& spectrum) { return 1e-12 * spectrum.width(); }

ViolationSet find_violations(const spectral::Spectrum& spectrum, int q, double tol,
                             const qsum::QSumOptions& options) {
  require(tol >= 0.0 && std::isfinite(tol), kModule, "tolerance must be finite and >= 0");
  const auto sums = qsum::build_qsum(spectrum, q, options);
  ViolationSet out{q, tol, {}};
  const auto& s = sums.sums;

  std::size_t begin = 0;
  while (begin < s.size()) {
    std::size_t end = begin + 1;
    while (end < s.size() && s[end] - s[end - 1] <= tol) ++end;
    if (end - begin >= 2) {
      auto tuples = qsum::qsum_index_tuples(spectrum, q, s[begin], s[end - 1], options.compensated);
      std::sort(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) {
        return a.sum != b.sum ? a.sum < b.sum : a.indices < b.indices;
      });
      for (std::size_t a = 0; a < tuples.size(); ++a) {
        for (std::size_t b = a + 1; b < tuples.size(); ++b) {
          const double gap = tuples[b].sum - tuples[a].sum;
          if (gap > tol) break;
          const bool ordered = tuples[a].indices < tuples[b].indices;
          out.pairs.push_back(ViolationPair{ordered ? tuples[a].indices : tuples[b].indices,
                                            ordered ? tuples[b].indices : tuples[a].indices, gap});
        }
      }
    }
    begin = end;
  }
  return out;
}

ViolatorMultiplicity exceptional_multiplicity(const ViolationSet& violations) {
  ViolatorMultiplicity out;
  std::map<std::uint32_t, std::size_t> first_slot;
  for (const auto& pair : violations.pairs) {
    for (const auto* tuple : {&pair.first, &pair.second}) {
      for (std::uint32_t index : *tuple) ++out.counts[index];
      if (!tuple->empty()) ++first_slot[tuple->front()];
    }
  }
  for (const auto& [index, count] : out.counts) out.max_multiplicity = std::max(out.max_multiplicity, count);
  for (const auto& [index, count] : first_slot) out.max_first_slot = std::max(out.max_first_slot, count);
  return out;
}

std::size_t pseudo_violation_count(std::span<const double> sorted_sums, double eps) {
  require(eps > 0.0, kModule, "eps must be positive");
  std::size_t count = 0;
  for (std::size_t j = 0; j + 1 < sorted_sums.size(); ++j) {
    if (sorted_sums[j + 1] - sorted_sums[j] < eps) ++count;
  }
  return count;
}

std::size_t n_epsilon(const spectral::Spectrum& spectrum, double eps) {
  require(eps > 0.0, kModule, "eps must be positive");
  const std::size_t n = spectrum.size();
  require(n <= kMaxGapSpectrum, kModule,
          "n_epsilon enumerates N^2 gaps; N=" + std::to_string(n) + " exceeds the guard of " +
              std::to_string(kMaxGapSpectrum));
  if (n < 2) return 0;
  const auto& e = spectrum.energies;
  std::vector<double> gaps;
  gaps.reserve(n * (n - 1) / 2);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t l = 0; l < k; ++l) gaps.push_back(e[k] - e[l]);
  }
  std::sort(gaps.begin(), gaps.end());
  // The optimal window can always start at a gap value.
  std::size_t best = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < gaps.size(); ++lo) {
    hi = std::max(hi, lo);
    while (hi < gaps.size() && gaps[hi] < gaps[lo] + eps) ++hi;
    best = std::max(best, hi - lo);
  }
  return best;
}

double expected_exceptional(std::uint64_t violations, int L) {
  require(L >= 1, kModule, "L must be >= 1");
  if (violations == 0) return 0.0;
  const double x = std::ldexp(1.0, -L);
  const double log_value = std::log(static_cast<double>(violations)) - L * std::numbers::ln2 +
                           static_cast<double>(violations - 1) * std::log1p(x);
  return std::exp(log_value);
}

stats::MeanEstimate monte_carlo_expected_exceptional(std::uint64_t violations, int L, std::size_t trials,
                                                     std::uint64_t seed) {
  require(trials >= 100, kModule, "need at least 100 trials");
  require(L >= 1 && L <= 62, kModule, "L must be in [1, 62]");
  if (violations == 0) return stats::MeanEstimate{0.0, 0.0};

  Engine engine = make_engine(seed, "resonance.exceptional");
  std::uniform_int_distribution<std::uint64_t> draw(0, (std::uint64_t{1} << L) - 1);
  const double scale = std::ldexp(1.0, -L);
  std::vector<std::uint64_t> indices(violations);
  std::vector<double> values(trials);
  for (double& value : values) {
    for (auto& index : indices) index = draw(engine);
    std::sort(indices.begin(), indices.end());
    double total = 0.0;
    std::size_t i = 0;
    while (i < indices.size()) {
      std::size_t j = i;
      while (j < indices.size() && indices[j] == indices[i]) ++j;
      const auto k = static_cast<int>(j - i);
      total += k * std::ldexp(1.0, k - 1);
      i = j;
    }
    value = total * scale;
  }
  return stats::mean_and_stderr(values);
}

}  // namespace nores::resonance
