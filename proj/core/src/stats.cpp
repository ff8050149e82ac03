// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "nores/errors.hpp"
#include "nores/random.hpp"

namespace nores::stats {
namespace {

constexpr std::string_view kModule = "stats";
constexpr double kPi = std::numbers::pi;

}  // namespace

RatioStatistics ratios(std::span<const double> spacings) {
  require(spacings.size() >= 2, kModule, "need at least two spacings for a ratio");
  RatioStatistics out;
  out.ratios.reserve(spacings.size() - 1);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < spacings.size(); ++j) {
    const double a = spacings[j];
    const double b = spacings[j + 1];
    require(a >= 0.0 && b >= 0.0, kModule, "spacings must be non-negative");
    const double hi = std::max(a, b);
    if (hi == 0.0) {
      ++out.zero_pairs;
      continue;
    }
    const double r = std::min(a, b) / hi;
    out.ratios.push_back(r);
    total += r;
  }
  if (out.ratios.empty()) {
    out.diagnostic = "all " + std::to_string(out.zero_pairs) + " spacing pairs are zero; no ratio defined";
  } else {
    out.mean = total / static_cast<double>(out.ratios.size());
  }
  return out;
}

Histogram histogram(std::span<const double> values, double lo, double hi, int bins) {
  require(bins >= 1, kModule, "bins must be >= 1");
  require(hi > lo, kModule, "histogram range must have hi > lo");
  Histogram h;
  const double width = (hi - lo) / bins;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + b * width;
  h.edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    if (!(v >= lo && v <= hi)) {
      ++h.out_of_range;
      continue;
    }
    auto b = static_cast<std::size_t>((v - lo) / width);
    b = std::min(b, static_cast<std::size_t>(bins) - 1);
    ++h.counts[b];
    ++h.samples;
  }
  h.density.assign(static_cast<std::size_t>(bins), 0.0);
  if (h.samples > 0) {
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      const double w = h.edges[b + 1] - h.edges[b];
      h.density[b] = static_cast<double>(h.counts[b]) / (static_cast<double>(h.samples) * w);
    }
  }
  return h;
}

double wigner_surmise(double s) { return s < 0.0 ? 0.0 : 0.5 * kPi * s * std::exp(-0.25 * kPi * s * s); }
double wigner_cdf(double s) { return s <= 0.0 ? 0.0 : -std::expm1(-0.25 * kPi * s * s); }

double poisson_spacing(double s) { return s < 0.0 ? 0.0 : std::exp(-s); }
double poisson_spacing_cdf(double s) { return s <= 0.0 ? 0.0 : -std::expm1(-s); }

double goe_ratio_density(double r) {
  if (r < 0.0 || r > 1.0) return 0.0;
  const double w = 1.0 + r + r * r;
  return 6.75 * (r + r * r) / std::pow(w, 2.5);
}

double goe_ratio_cdf(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  const double w = 1.0 + r + r * r;
  return 1.0 + (2.0 * r * r * r + 3.0 * r * r - 3.0 * r - 2.0) / (2.0 * std::pow(w, 1.5));
}

double poisson_ratio_density(double r) {
  if (r < 0.0 || r > 1.0) return 0.0;
  return 2.0 / ((1.0 + r) * (1.0 + r));
}

double poisson_ratio_cdf(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return 2.0 * r / (1.0 + r);
}

MeanRatioReferences mean_ratio_references() {
  return MeanRatioReferences{2.0 * std::numbers::ln2 - 1.0, 4.0 - 2.0 * std::numbers::sqrt3};
}

double small_gap_probability(double eps, GapModel model) {
  require(eps >= 0.0, kModule, "eps must be non-negative");
  return model == GapModel::kGOE ? wigner_cdf(eps) : poisson_spacing_cdf(eps);
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& reference_cdf) {
  require(samples.size() >= kMinKsSamples, kModule,
          "KS distance needs at least " + std::to_string(kMinKsSamples) + " samples (got " +
              std::to_string(samples.size()) + ")");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    // Treat ties as one jump of the empirical CDF.
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    // Below the jump compare with the reference's left limit, so step-shaped
    // references are handled exactly.
    const double below = reference_cdf(std::nextafter(sorted[i], -std::numeric_limits<double>::infinity()));
    const double at = reference_cdf(sorted[i]);
    worst = std::max({worst, std::abs(static_cast<double>(i) / n - below), std::abs(static_cast<double>(j) / n - at)});
    i = j;
  }
  return worst;
}

MeanEstimate mean_and_stderr(std::span<const double> samples) {
  require(samples.size() >= 2, kModule, "need at least two samples for a standard error");
  const auto n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  return MeanEstimate{mean, std::sqrt(ss / (n - 1.0) / n)};
}

MeanEstimate bootstrap_mean(std::span<const double> samples, std::size_t resamples, std::uint64_t seed) {
  require(samples.size() >= 2, kModule, "need at least two samples to bootstrap");
  require(resamples >= 2, kModule, "need at least two bootstrap resamples");
  Engine engine = make_engine(seed, "stats.bootstrap");
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  std::vector<double> means(resamples);
  for (double& m : means) {
    double total = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) total += samples[pick(engine)];
    m = total / static_cast<double>(samples.size());
  }
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(samples.size());
  double center = 0.0;
  for (double m : means) center += m;
  center /= static_cast<double>(resamples);
  double ss = 0.0;
  for (double m : means) ss += (m - center) * (m - center);
  return MeanEstimate{mean, std::sqrt(ss / static_cast<double>(resamples - 1))};
}

}  // namespace nores::stats
