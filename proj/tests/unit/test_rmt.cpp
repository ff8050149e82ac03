// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cmath>

#include "nores/errors.hpp"
#include "nores/rmt.hpp"
#include "nores/spectral.hpp"

using namespace nores;

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  std::size_t n = 0;
};

template <class Get>
Moments moments(std::size_t n, Get get) {
  double s = 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = get(i);
    s += x;
    ss += x * x;
  }
  const double mean = s / n;
  return {mean, ss / n - mean * mean, n};
}

// Three standard deviations of a sample variance of a normal with variance v.
double variance_band(double v, std::size_t n) { return 3.0 * v * std::sqrt(2.0 / (n - 1)); }

}  // namespace

TEST_CASE("GOE entries have variance 2 off the diagonal and 4 on it") {
  const rmt::EnsembleSpec root{rmt::Ensemble::GOE, 320, 11};
  const auto h = rmt::sample_goe(root);
  const Eigen::Index n = h.rows();
  const std::size_t off_count = static_cast<std::size_t>(n * (n - 1) / 2);
  std::vector<double> off;
  off.reserve(off_count);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) off.push_back(h(i, j));
  }
  REQUIRE(off.size() > 50'000);
  const auto m = moments(off.size(), [&](std::size_t i) { return off[i]; });
  CHECK(std::abs(m.variance - 2.0) < variance_band(2.0, off.size()));

  std::vector<double> diag;
  for (std::uint64_t member = 0; diag.size() < 100'000; ++member) {
    const auto g = rmt::sample_goe(rmt::member(rmt::EnsembleSpec{rmt::Ensemble::GOE, 400, 5}, member));
    for (Eigen::Index i = 0; i < g.rows(); ++i) diag.push_back(g(i, i));
  }
  const auto d = moments(diag.size(), [&](std::size_t i) { return diag[i]; });
  CHECK(std::abs(d.variance - 4.0) < variance_band(4.0, diag.size()));
}

TEST_CASE("GOE samples are symmetric and reproducible") {
  const rmt::EnsembleSpec spec{rmt::Ensemble::GOE, 50, 123};
  const auto a = rmt::sample_goe(spec);
  const auto b = rmt::sample_goe(spec);
  CHECK(a == a.transpose());
  CHECK(a == b);
  CHECK(a != rmt::sample_goe(rmt::EnsembleSpec{rmt::Ensemble::GOE, 50, 124}));
  CHECK(rmt::member(spec, 0).seed != rmt::member(spec, 1).seed);
}

TEST_CASE("GUE samples are Hermitian with unit diagonal variance") {
  const rmt::EnsembleSpec spec{rmt::Ensemble::GUE, 60, 7};
  const auto h = rmt::sample_gue(spec);
  CHECK(h == h.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) CHECK(h(i, i).imag() == 0.0);
  CHECK(h == rmt::sample_gue(spec));
  const auto s = spectral::eigenvalues(h);
  CHECK(s.size() == 60);

  std::vector<double> diag;
  std::vector<double> off_re;
  for (std::uint64_t member = 0; diag.size() < 100'000; ++member) {
    const auto g = rmt::sample_gue(rmt::member(rmt::EnsembleSpec{rmt::Ensemble::GUE, 200, 9}, member));
    for (Eigen::Index i = 0; i < g.rows(); ++i) diag.push_back(g(i, i).real());
    for (Eigen::Index i = 1; i < g.rows(); ++i) off_re.push_back(g(i - 1, i).real());
  }
  const auto d = moments(diag.size(), [&](std::size_t i) { return diag[i]; });
  CHECK(std::abs(d.variance - 1.0) < variance_band(1.0, diag.size()));
  const auto o = moments(off_re.size(), [&](std::size_t i) { return off_re[i]; });
  CHECK(std::abs(o.variance - 0.5) < variance_band(0.5, off_re.size()));
}

TEST_CASE("GOE density is confined to the semicircle") {
  const int N = 1000;
  const auto s = spectral::eigenvalues(rmt::sample_goe({rmt::Ensemble::GOE, N, 2024}));
  const double edge = 2.1 * std::sqrt(2.0 * N);
  std::size_t outside = 0;
  for (double e : s.energies) outside += std::abs(e) > edge ? 1 : 0;
  CHECK(static_cast<double>(outside) / N < 0.005);
}

TEST_CASE("ensemble parsing and kind checks") {
  CHECK(rmt::parse_ensemble("goe") == rmt::Ensemble::GOE);
  CHECK(rmt::parse_ensemble("GUE") == rmt::Ensemble::GUE);
  CHECK_THROWS_AS(rmt::parse_ensemble("gse"), ValidationError);
  CHECK_THROWS_AS(rmt::sample_goe({rmt::Ensemble::GUE, 10, 0}), ValidationError);
  CHECK_THROWS_AS(rmt::sample_gue({rmt::Ensemble::GUE, 1, 0}), ValidationError);
}
