// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nores/errors.hpp"

namespace nores::spectral {
namespace {

constexpr std::string_view kModule = "spectral";
constexpr double kKernelCutoff = 9.0;

template <typename Matrix>
void check_square_finite(const Matrix& matrix) {
  require(matrix.rows() == matrix.cols(), kModule, "matrix must be square");
  require(matrix.rows() > 0, kModule, "matrix must be non-empty");
  require(matrix.allFinite(), kModule, "matrix has non-finite entries");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

Spectrum make_spectrum(std::vector<double> energies, nlohmann::json source) {
  for (double e : energies) require(std::isfinite(e), kModule, "spectrum has non-finite entries");
  std::sort(energies.begin(), energies.end());
  return Spectrum{std::move(energies), std::move(source)};
}

Spectrum eigenvalues(const Eigen::MatrixXd& matrix, nlohmann::json source) {
  check_square_finite(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, kModule, "eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  return make_spectrum(std::vector<double>(values.begin(), values.end()), std::move(source));
}

Spectrum eigenvalues(const Eigen::MatrixXcd& matrix, nlohmann::json source) {
  check_square_finite(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, kModule, "eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  return make_spectrum(std::vector<double>(values.begin(), values.end()), std::move(source));
}

RealEigensystem eigensystem(const Eigen::MatrixXd& matrix, nlohmann::json source) {
  check_square_finite(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::ComputeEigenvectors);
  require(solver.info() == Eigen::Success, kModule, "eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  // Eigen returns ascending eigenvalues already.
  return RealEigensystem{Spectrum{std::vector<double>(values.begin(), values.end()), std::move(source)},
                         solver.eigenvectors()};
}

double max_relative_residual(const Eigen::MatrixXd& matrix, const RealEigensystem& system,
                             std::size_t samples) {
  const auto n = static_cast<std::size_t>(matrix.rows());
  const double scale = std::max(matrix.norm(), std::numeric_limits<double>::min());
  const std::size_t stride = std::max<std::size_t>(1, n / std::max<std::size_t>(1, samples));
  double worst = 0.0;
  for (std::size_t j = 0; j < n; j += stride) {
    const auto col = static_cast<Eigen::Index>(j);
    const Eigen::VectorXd v = system.vectors.col(col);
    const double residual = (matrix * v - system.spectrum.energies[j] * v).norm();
    worst = std::max(worst, residual / scale);
  }
  return worst;
}

std::vector<double> broadening_widths(std::span<const double> energies, const UnfoldingConfig& config) {
  const auto n = static_cast<std::ptrdiff_t>(energies.size());
  std::vector<double> sigma(energies.size());
  double smallest_positive = std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, k - config.alpha);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, k + config.alpha);
    const double mean_spacing = (energies[hi] - energies[lo]) / static_cast<double>(hi - lo);
    sigma[k] = config.broadening_factor * config.alpha * mean_spacing;
    if (sigma[k] > 0.0) smallest_positive = std::min(smallest_positive, sigma[k]);
  }
  require(std::isfinite(smallest_positive), kModule, "spectrum has zero width; cannot unfold");
  for (double& s : sigma) {
    if (s <= 0.0) s = smallest_positive;
  }
  return sigma;
}

UnfoldedSpectrum unfold(const Spectrum& spectrum, const UnfoldingConfig& config) {
  const std::size_t n = spectrum.size();
  require(config.alpha >= 1, kModule, "alpha must be >= 1");
  require(config.broadening_factor > 0.0, kModule, "broadening factor must be positive");
  if (n <= 2 * static_cast<std::size_t>(config.alpha) + 1) {
    const long largest = (static_cast<long>(n) - 2) / 2;
    throw ValidationError(kModule, "spectrum of " + std::to_string(n) + " levels is too short for alpha=" +
                                       std::to_string(config.alpha) + "; largest admissible alpha is " +
                                       std::to_string(std::max(0L, largest)));
  }

  UnfoldedSpectrum out{gaussian_staircase(spectrum.energies, broadening_widths(spectrum.energies, config)),
                       config, spectrum.source};
  return out;
}

std::vector<double> gaussian_staircase(std::span<const double> e, std::span<const double> sigma) {
  const std::size_t n = e.size();
  require(sigma.size() == n, kModule, "one width per level required");
  for (double s : sigma) require(s > 0.0 && std::isfinite(s), kModule, "widths must be positive");

  // Level j adds Phi((E_k - E_j)/sigma_j) to every k inside its 9-sigma
  // window and exactly 1 to every k above it; the latter goes through a
  // difference array.
  std::vector<double> partial(n, 0.0);
  std::vector<double> saturated(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double reach = kKernelCutoff * sigma[j];
    const auto first = std::lower_bound(e.begin(), e.end(), e[j] - reach);
    const auto last = std::upper_bound(first, e.end(), e[j] + reach);
    for (auto it = first; it != last; ++it) {
      partial[static_cast<std::size_t>(it - e.begin())] += normal_cdf((*it - e[j]) / sigma[j]);
    }
    saturated[static_cast<std::size_t>(last - e.begin())] += 1.0;
  }

  std::vector<double> out(n);
  double ones = 0.0;
  double previous = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    ones += saturated[k];
    // Rounding in the two partial sums may reorder near-equal levels by an ulp.
    previous = std::max(previous, ones + partial[k]);
    out[k] = previous;
  }
  return out;
}

std::vector<double> spacings(std::span<const double> levels) {
  std::vector<double> out;
  if (levels.size() < 2) return out;
  out.reserve(levels.size() - 1);
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) out.push_back(levels[k + 1] - levels[k]);
  return out;
}

std::span<const double> bulk(std::span<const double> levels, double fraction) {
  require(fraction >= 0.0 && fraction < 0.5, kModule, "trim fraction must be in [0, 0.5)");
  const auto drop = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(levels.size())));
  return levels.subspan(drop, levels.size() - 2 * drop);
}

}  // namespace nores::spectral
