// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "nores/chain.hpp"
#include "nores/formfactor.hpp"
#include "nores/qsum.hpp"
#include "nores/rmt.hpp"
#include "nores/spectral.hpp"
#include "nores/stats.hpp"

namespace nores::pipeline {

// End-to-end compositions behind the command line tool. Every number in a
// summary comes from a module operation; the tool only parses flags and
// writes files.

enum class Source { kChain, kGOE, kGUE };

Source parse_source(std::string_view name);
std::string_view to_string(Source source);

struct SpectrumRequest {
  Source source = Source::kGOE;
  int N = 200;                   // RMT matrix size
  chain::ChainSpec chain{};      // used when source == kChain
  std::uint64_t seed = 0;        // RMT root seed
  std::size_t realizations = 1;  // RMT members; chains are deterministic
};

/// Realization `index` of the request (members derived from the root seed).
spectral::Spectrum generate_spectrum(const SpectrumRequest& request, std::size_t index = 0);

nlohmann::json describe(const SpectrumRequest& request);

/// Summary of ratio statistics for one sorted level sequence or a pool of
/// ratios: count, mean, bootstrap standard error, KS distances to the GOE
/// and Poisson ratio laws and both reference means.
nlohmann::json ratio_summary(const stats::RatioStatistics& ratios, std::size_t bootstrap, std::uint64_t seed);

/// Spacings normalized to unit mean with KS distances to the Wigner surmise
/// and the exponential law, and the small-gap fraction at eps = 0.1.
nlohmann::json spacing_summary(const std::vector<double>& normalized_spacings);

/// Spacings of `levels` divided by their mean.
std::vector<double> normalized_spacings(std::span<const double> levels);

inline constexpr double kSmallGapEps = 0.1;

/// Spacing histograms cover [0, kSpacingRange].
inline constexpr double kSpacingRange = 4.0;

// qstats: spectrum -> optional unfold -> q-sum -> bulk -> ratios (+ spacings).

struct QStatsParams {
  SpectrumRequest spectrum;
  int q = 1;
  bool unfold = false;
  spectral::UnfoldingConfig unfolding{};
  double bulk_fraction = spectral::kBulkTrim;
  int bins = 100;
  std::size_t bootstrap = 1000;
  qsum::QSumOptions qsum{};
};

/// Spacing statistics of q-sum spectra are only formed up to this many sums.
inline constexpr std::size_t kMaxSpacingSums = 20'000'000;

struct QStatsResult {
  nlohmann::json summary;
  stats::Histogram ratio_histogram;
  std::optional<stats::Histogram> spacing_histogram;  // when unfolding
  std::vector<double> ratios;
  std::vector<double> spacings;
};

QStatsResult run_qstats(const QStatsParams& params);

// equilibration: spectrum + state + observable -> moments and bounds.

struct EquilibrationParams {
  spectral::Spectrum spectrum;
  std::optional<Eigen::VectorXcd> state;        // random when unset
  std::optional<Eigen::MatrixXcd> observable;   // random when unset
  int q = 2;
  double T = 1e4;
  std::size_t steps = 0;  // 0 picks the coarsest admissible grid
  std::optional<double> tolerance;  // resonance tolerance, default 1e-9 * spread
  std::uint64_t seed = 0;
};

nlohmann::json run_equilibration(const EquilibrationParams& params);

// sff: empirical and analytic two-level form factor on one grid.

struct SffParams {
  rmt::Ensemble ensemble = rmt::Ensemble::GUE;
  int N = 400;
  std::size_t samples = 200;
  double tmin = 0.1;
  double tmax = 2000.0;
  std::size_t points = 200;
  bool logarithmic = true;
  std::uint64_t seed = 0;
  spectral::UnfoldingConfig unfolding{};
};

struct SffResult {
  nlohmann::json summary;
  formfactor::FormFactorCurve empirical;
  formfactor::FormFactorCurve analytic;
};

SffResult run_sff(const SffParams& params);

/// Violations, exceptional multiplicity and pseudo-violation count of one
/// spectrum at level q.
nlohmann::json resonance_summary(const spectral::Spectrum& spectrum, int q, double tol,
                                 std::optional<double> pseudo_eps, const qsum::QSumOptions& options = {});

}  // namespace nores::pipeline
