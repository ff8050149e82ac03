// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace nores::spectral {

/// Fraction of levels dropped at each end by statistics marked "bulk".
inline constexpr double kBulkTrim = 0.02;

/// Sorted, finite eigenvalues together with where they came from.
struct Spectrum {
  std::vector<double> energies;
  nlohmann::json source = nlohmann::json::object();

  std::size_t size() const noexcept { return energies.size(); }
  double width() const noexcept {
    return energies.empty() ? 0.0 : energies.back() - energies.front();
  }
};

/// Sorts `energies` and rejects non-finite entries.
Spectrum make_spectrum(std::vector<double> energies, nlohmann::json source = nlohmann::json::object());

Spectrum eigenvalues(const Eigen::MatrixXd& matrix, nlohmann::json source = nlohmann::json::object());
Spectrum eigenvalues(const Eigen::MatrixXcd& matrix, nlohmann::json source = nlohmann::json::object());

struct RealEigensystem {
  Spectrum spectrum;
  Eigen::MatrixXd vectors;  // column j pairs with spectrum.energies[j]
};

RealEigensystem eigensystem(const Eigen::MatrixXd& matrix, nlohmann::json source = nlohmann::json::object());

/// max_j ||H v_j - E_j v_j|| / ||H||_F over `samples` evenly strided eigenpairs.
double max_relative_residual(const Eigen::MatrixXd& matrix, const RealEigensystem& system,
                             std::size_t samples = 16);

struct UnfoldingConfig {
  int alpha = 20;
  double broadening_factor = 0.608;
};

struct UnfoldedSpectrum {
  std::vector<double> epsilons;
  UnfoldingConfig config;
  nlohmann::json source = nlohmann::json::object();

  std::size_t size() const noexcept { return epsilons.size(); }
};

/// Gaussian-broadening unfolding. Each level E_j carries a Gaussian of width
/// sigma_j = broadening_factor * alpha * Delta_j, where Delta_j is the mean
/// level spacing over the index window [j - alpha, j + alpha] (clamped to the
/// spectrum), and
///
///   eps_k = sum_j Phi((E_k - E_j) / sigma_j)
///
/// with Phi the standard normal CDF. Kernels are truncated at 9 sigma, where
/// the neglected mass is below double precision. Exactly degenerate windows
/// (sigma_j == 0) borrow the smallest positive sigma in the spectrum.
UnfoldedSpectrum unfold(const Spectrum& spectrum, const UnfoldingConfig& config = {});

/// Per-level broadening widths sigma_j used by unfold().
std::vector<double> broadening_widths(std::span<const double> energies, const UnfoldingConfig& config);

/// Smoothed staircase sum_j Phi((E_k - E_j) / sigma_j) evaluated at every
/// level E_k of a sorted spectrum, for explicit per-level widths.
std::vector<double> gaussian_staircase(std::span<const double> energies, std::span<const double> sigma);

/// Consecutive differences of a sorted sequence (length n - 1).
std::vector<double> spacings(std::span<const double> levels);

/// Drops the lowest and highest `fraction` of a sorted sequence.
std::span<const double> bulk(std::span<const double> levels, double fraction = kBulkTrim);

}  // namespace nores::spectral
