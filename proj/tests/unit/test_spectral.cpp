// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numeric>

#include "nores/errors.hpp"
#include "nores/rmt.hpp"
#include "nores/spectral.hpp"
#include "nores/stats.hpp"

using namespace nores;

namespace {

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

}  // namespace

TEST_CASE("dense eigenvalues") {
  CHECK(spectral::eigenvalues(Eigen::MatrixXd(Eigen::MatrixXd::Identity(5, 5))).energies == std::vector<double>(5, 1.0));
  Eigen::MatrixXd d = Eigen::Vector3d(3, 1, 2).asDiagonal();
  const auto s = spectral::eigenvalues(d);
  CHECK(s.energies == std::vector<double>{1, 2, 3});

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(spectral::eigenvalues(bad), ValidationError);
  CHECK_THROWS_AS(spectral::eigenvalues(Eigen::MatrixXd(2, 3)), ValidationError);
  CHECK_THROWS_AS(spectral::make_spectrum({1.0, std::numeric_limits<double>::infinity()}), ValidationError);
}

TEST_CASE("eigenvector residuals are tiny") {
  const auto h = rmt::sample_goe({rmt::Ensemble::GOE, 300, 4});
  const auto sys = spectral::eigensystem(h);
  CHECK(spectral::max_relative_residual(h, sys) <= 1e-10);
}

TEST_CASE("spacings and bulk trim") {
  const std::vector<double> levels{1, 3, 4};
  CHECK(spectral::spacings(levels) == std::vector<double>{2, 1});
  const std::vector<double> flat(5, 2.0);
  CHECK(spectral::spacings(flat) == std::vector<double>(4, 0.0));
  std::vector<double> hundred(100);
  std::iota(hundred.begin(), hundred.end(), 0.0);
  const auto b = spectral::bulk(hundred);
  CHECK(b.size() == 96);
  CHECK(b.front() == 2.0);
  CHECK(b.back() == 97.0);
}

TEST_CASE("own Gaussian contributes half its mass") {
  const std::vector<double> e{0.0, 100.0, 200.0};
  const std::vector<double> sigma{1.0, 1.0, 1.0};
  const auto eps = spectral::gaussian_staircase(e, sigma);
  CHECK(eps[0] == Catch::Approx(0.5).margin(1e-15));
  CHECK(eps[1] == Catch::Approx(1.5).margin(1e-15));
  CHECK(eps[2] == Catch::Approx(2.5).margin(1e-15));
}

TEST_CASE("broadening widths follow the clamped window") {
  std::vector<double> e(50);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = 2.0 * k;
  const auto sigma = spectral::broadening_widths(e, {5, 0.608});
  for (double s : sigma) CHECK(s == Catch::Approx(0.608 * 5 * 2.0).epsilon(1e-14));
}

TEST_CASE("uniform spectrum is a fixed point of unfolding in the bulk") {
  std::vector<double> e(200);
  std::iota(e.begin(), e.end(), 0.0);
  const auto u = spectral::unfold(spectral::make_spectrum(e), {20, 0.608});
  const auto s = spectral::spacings(spectral::bulk(u.epsilons, 0.2));
  for (double x : s) CHECK(std::abs(x - 1.0) < 0.01);
}

TEST_CASE("unfolded GOE has unit mean spacing and is monotone") {
  const auto spectrum = spectral::eigenvalues(rmt::sample_goe({rmt::Ensemble::GOE, 1000, 99}));
  const auto u = spectral::unfold(spectrum);
  CHECK(std::is_sorted(u.epsilons.begin(), u.epsilons.end()));
  const double m = mean_of(spectral::spacings(spectral::bulk(u.epsilons)));
  CHECK(m >= 0.98);
  CHECK(m <= 1.02);
}

TEST_CASE("unfolding rejects short spectra and reports the admissible alpha") {
  const auto s = spectral::make_spectrum({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  try {
    spectral::unfold(s, {20, 0.608});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("alpha is 4") != std::string::npos);
    CHECK(e.module() == "spectral");
  }
  CHECK_NOTHROW(spectral::unfold(s, {4, 0.608}));
  CHECK_THROWS_AS(spectral::unfold(s, {0, 0.608}), ValidationError);
}

TEST_CASE("degenerate windows borrow the smallest positive width") {
  std::vector<double> e(60, 0.0);
  for (std::size_t k = 30; k < e.size(); ++k) e[k] = static_cast<double>(k);
  const auto sigma = spectral::broadening_widths(e, {3, 0.608});
  double smallest = std::numeric_limits<double>::infinity();
  for (double s : sigma) {
    CHECK(s > 0.0);
    smallest = std::min(smallest, s);
  }
  CHECK(sigma[0] == smallest);
  CHECK_THROWS_AS(spectral::unfold(spectral::make_spectrum(std::vector<double>(60, 1.0)), {3, 0.608}),
                  ValidationError);
}

TEST_CASE("ratio statistics are affine invariant") {
  const auto spectrum = spectral::eigenvalues(rmt::sample_goe({rmt::Ensemble::GOE, 200, 3}));
  std::vector<double> moved(spectrum.energies);
  for (double& x : moved) x = 3.7 * x - 11.0;
  const auto a = stats::ratios(spectral::spacings(spectrum.energies));
  const auto b = stats::ratios(spectral::spacings(moved));
  REQUIRE(a.count() == b.count());
  for (std::size_t i = 0; i < a.count(); ++i) CHECK(std::abs(a.ratios[i] - b.ratios[i]) <= 1e-12);
}
