// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nores::stats {

/// Gap ratios r_j = min(s_j, s_{j+1}) / max(s_j, s_{j+1}).
struct RatioStatistics {
  std::vector<double> ratios;
  double mean = 0.0;
  std::size_t zero_pairs = 0;  // pairs with max(s_j, s_{j+1}) == 0, left out
  std::string diagnostic;      // non-empty when no ratio could be formed

  std::size_t count() const noexcept { return ratios.size(); }
};

RatioStatistics ratios(std::span<const double> spacings);

struct Histogram {
  std::vector<double> edges;          // bins + 1 edges
  std::vector<double> density;        // integrates to 1 over [edges.front(), edges.back()]
  std::vector<std::size_t> counts;
  std::size_t samples = 0;            // samples that fell inside the range
  std::size_t out_of_range = 0;
};

/// Uniform-bin density histogram on [lo, hi]; the right edge is inclusive.
Histogram histogram(std::span<const double> values, double lo, double hi, int bins = 100);

// Reference densities and their CDFs.

/// Normalized unit-mean Wigner surmise (pi s / 2) exp(-pi s^2 / 4).
double wigner_surmise(double s);
double wigner_cdf(double s);

double poisson_spacing(double s);
double poisson_spacing_cdf(double s);

/// Gap-ratio density of 3x3 GOE matrices folded onto [0, 1]:
/// (27/4) (r + r^2) / (1 + r + r^2)^{5/2}.
double goe_ratio_density(double r);
/// Closed form 1 + (2r^3 + 3r^2 - 3r - 2) / (2 (1 + r + r^2)^{3/2}).
double goe_ratio_cdf(double r);

/// Ratio density of independent levels, 2 / (1 + r)^2.
double poisson_ratio_density(double r);
double poisson_ratio_cdf(double r);

struct MeanRatioReferences {
  double poisson;
  double goe;
};

/// <r> for independent levels (2 ln 2 - 1) and for the GOE (4 - 2 sqrt 3).
MeanRatioReferences mean_ratio_references();

enum class GapModel { kGOE, kPoisson };

/// Probability of a unit-mean spacing below eps: 1 - exp(-pi eps^2 / 4) for
/// the GOE surmise, 1 - exp(-eps) for Poisson.
double small_gap_probability(double eps, GapModel model);

/// Kolmogorov-Smirnov sup-distance between the empirical CDF of `samples` and
/// `reference_cdf`. Needs at least 100 samples.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& reference_cdf);

inline constexpr std::size_t kMinKsSamples = 100;

struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Bootstrap standard error of the sample mean.
MeanEstimate bootstrap_mean(std::span<const double> samples, std::size_t resamples, std::uint64_t seed);

/// Mean and standard error of independent samples.
MeanEstimate mean_and_stderr(std::span<const double> samples);

}  // namespace nores::stats
