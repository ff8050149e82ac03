// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/rmt.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "nores/errors.hpp"
#include "nores/random.hpp"

namespace nores::rmt {
namespace {

constexpr std::string_view kModule = "rmt";

void check(const EnsembleSpec& spec, Ensemble expected) {
  require(spec.kind == expected, kModule, std::string("spec kind is ") + std::string(to_string(spec.kind)));
  require(spec.N >= 2, kModule, "N must be >= 2");
}

}  // namespace

std::string_view to_string(Ensemble kind) { return kind == Ensemble::GOE ? "goe" : "gue"; }

Ensemble parse_ensemble(std::string_view name) {
  if (name == "goe" || name == "GOE") return Ensemble::GOE;
  if (name == "gue" || name == "GUE") return Ensemble::GUE;
  throw ValidationError(kModule, "unknown ensemble '" + std::string(name) + "' (expected goe or gue)");
}

EnsembleSpec member(const EnsembleSpec& root, std::uint64_t index) {
  return EnsembleSpec{root.kind, root.N, derive_seed(root.seed, "rmt.member", index)};
}

Eigen::MatrixXd sample_goe(const EnsembleSpec& spec) {
  check(spec, Ensemble::GOE);
  Engine engine = make_engine(spec.seed, "rmt.goe");
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index n = spec.N;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = normal(engine);
  }
  Eigen::MatrixXd h = a + a.transpose();
  return h;
}

Eigen::MatrixXcd sample_gue(const EnsembleSpec& spec) {
  check(spec, Ensemble::GUE);
  Engine engine = make_engine(spec.seed, "rmt.gue");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const Eigen::Index n = spec.N;
  Eigen::MatrixXcd b(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(engine);
      const double im = normal(engine);
      b(i, j) = std::complex<double>(re, im);
    }
  }
  Eigen::MatrixXcd h = (b + b.adjoint()) / std::sqrt(2.0);
  return h;
}

}  // namespace nores::rmt
