// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/equilibration.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nores/errors.hpp"

namespace nores::equilibration {
namespace {

constexpr std::string_view kModule = "equilibration";
using Complex = std::complex<double>;

void check_state(const spectral::Spectrum& spectrum, const Eigen::VectorXcd& c, const ObservableSpec& a) {
  const auto d = static_cast<Eigen::Index>(spectrum.size());
  require(c.size() == d, kModule, "state dimension does not match the spectrum");
  require(a.matrix.rows() == d && a.matrix.cols() == d, kModule,
          "observable dimension does not match the spectrum");
  require(std::abs(c.squaredNorm() - 1.0) <= 1e-12, kModule, "state must be normalized");
}

double spread(const spectral::Spectrum& spectrum) { return spectrum.width(); }

}  // namespace

DiagonalEnsemble diagonal_ensemble(const Eigen::VectorXcd& c) {
  require(c.size() > 0, kModule, "state must be non-empty");
  require(std::abs(c.squaredNorm() - 1.0) <= 1e-12, kModule, "state must be normalized");
  DiagonalEnsemble out;
  out.populations.resize(static_cast<std::size_t>(c.size()));
  for (Eigen::Index m = 0; m < c.size(); ++m) {
    const double p = std::norm(c(m));
    out.populations[static_cast<std::size_t>(m)] = p;
    out.purity += p * p;
  }
  return out;
}

ObservableSpec make_observable(Eigen::MatrixXcd matrix) {
  require(matrix.rows() == matrix.cols() && matrix.rows() > 0, kModule, "observable must be square");
  require(matrix.allFinite(), kModule, "observable has non-finite entries");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  require((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale, kModule,
          "observable must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
  const double norm = solver.eigenvalues().cwiseAbs().maxCoeff();
  return ObservableSpec{std::move(matrix), norm};
}

double infinite_time_average(const Eigen::VectorXcd& c, const ObservableSpec& a) {
  require(c.size() == a.matrix.rows(), kModule, "state and observable dimensions differ");
  double total = 0.0;
  for (Eigen::Index m = 0; m < c.size(); ++m) total += std::norm(c(m)) * a.matrix(m, m).real();
  return total;
}

double max_time_step(const spectral::Spectrum& spectrum) {
  const double w = spread(spectrum);
  return w > 0.0 ? std::numbers::pi / (4.0 * w) : std::numeric_limits<double>::infinity();
}

std::size_t required_steps(double T, const spectral::Spectrum& spectrum) {
  const double h = max_time_step(spectrum);
  auto steps = static_cast<std::size_t>(std::isfinite(h) ? std::ceil(T / h) : 2.0);
  steps = std::max<std::size_t>(steps, 2);
  return steps + (steps % 2);
}

double mu_q_timeavg(double T, const spectral::Spectrum& spectrum, const Eigen::VectorXcd& c,
                    const ObservableSpec& a, int q, std::size_t steps) {
  require(T > 0.0 && std::isfinite(T), kModule, "T must be positive");
  require(q >= 1, kModule, "q must be >= 1");
  check_state(spectrum, c, a);
  steps = std::max<std::size_t>(steps + (steps % 2), 2);
  const double h = T / static_cast<double>(steps);
  if (h > max_time_step(spectrum)) {
    throw ValidationError(kModule, "quadrature step " + std::to_string(h) + " is coarser than the required " +
                                       std::to_string(max_time_step(spectrum)) + "; use at least " +
                                       std::to_string(required_steps(T, spectrum)) + " steps");
  }

  const double mean = infinite_time_average(c, a);
  const auto d = c.size();
  Eigen::VectorXcd v(d);
  auto integrand = [&](double t) {
    for (Eigen::Index n = 0; n < d; ++n) {
      const double phase = -spectrum.energies[static_cast<std::size_t>(n)] * t;
      v(n) = c(n) * Complex(std::cos(phase), std::sin(phase));
    }
    const double expectation = v.dot(a.matrix * v).real();  // v^dagger A v
    return std::pow(expectation - mean, q);
  };

  double total = integrand(0.0) + integrand(T);
  for (std::size_t i = 1; i < steps; ++i) {
    total += (i % 2 == 1 ? 4.0 : 2.0) * integrand(h * static_cast<double>(i));
  }
  return total * h / 3.0 / T;
}

double default_resonance_tolerance(const spectral::Spectrum& spectrum) { return 1e-9 * spread(spectrum); }

double mu_q_resonant_sum(const spectral::Spectrum& spectrum, const Eigen::VectorXcd& c, const ObservableSpec& a,
                         int q, double tol) {
  require(q >= 1, kModule, "q must be >= 1");
  require(tol >= 0.0, kModule, "tolerance must be >= 0");
  check_state(spectrum, c, a);
  const auto d = static_cast<std::size_t>(spectrum.size());

  struct Term {
    double omega;
    Complex z;
  };
  std::vector<Term> terms;
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      if (m == n) continue;
      const auto mi = static_cast<Eigen::Index>(m);
      const auto ni = static_cast<Eigen::Index>(n);
      terms.push_back(Term{spectrum.energies[m] - spectrum.energies[n], std::conj(c(mi)) * c(ni) * a.matrix(mi, ni)});
    }
  }
  double combos = 1.0;
  for (int j = 0; j < q; ++j) combos *= static_cast<double>(terms.size());
  require(combos <= static_cast<double>(kMaxResonantTerms), kModule,
          "resonant-sum enumeration of " + std::to_string(combos) + " terms exceeds the guard");
  if (terms.empty()) return 0.0;

  // Depth-first over q pair slots; the last slot only needs frequencies
  // cancelling the accumulated one, found by binary search on sorted terms.
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.omega < y.omega; });
  Complex total{0.0, 0.0};
  auto recurse = [&](auto&& self, int depth, double omega, Complex product) -> void {
    if (depth == q - 1) {
      const auto first = std::lower_bound(terms.begin(), terms.end(), -omega - tol,
                                          [](const Term& t, double w) { return t.omega < w; });
      for (auto it = first; it != terms.end() && it->omega <= -omega + tol; ++it) {
        if (std::abs(omega + it->omega) <= tol) total += product * it->z;
      }
      return;
    }
    for (const Term& t : terms) self(self, depth + 1, omega + t.omega, product * t.z);
  };
  recurse(recurse, 0, 0.0, Complex{1.0, 0.0});
  return total.real();
}

double bound_short(const ObservableSpec& a, const DiagonalEnsemble& omega) {
  return a.norm * a.norm * omega.purity;
}

double bound_riddell(const ObservableSpec& a, const DiagonalEnsemble& omega, int q) {
  require(q >= 1, kModule, "q must be >= 1");
  return std::pow(q * a.norm * std::sqrt(omega.purity), q);
}

double bound_theorem1(const ObservableSpec& a, const DiagonalEnsemble& omega, int q, double n_qL) {
  require(q >= 1, kModule, "q must be >= 1");
  require(n_qL >= 0.0, kModule, "violator multiplicity must be >= 0");
  return std::pow(a.norm, q) * (std::pow(q, q) + n_qL / (2.0 * q)) * std::pow(omega.purity, 0.5 * q);
}

double bound_theorem1_q2_quoted(const ObservableSpec& a, const DiagonalEnsemble& omega, double n_2L) {
  require(n_2L >= 0.0, kModule, "violator multiplicity must be >= 0");
  return a.norm * a.norm * (1.0 + n_2L / 4.0) * omega.purity;
}

double bound_farrelly(const ObservableSpec& a, const DiagonalEnsemble& omega, double n_eps) {
  require(n_eps >= 0.0, kModule, "N(eps) must be >= 0");
  return n_eps * a.norm * a.norm * omega.purity;
}

Eigen::VectorXcd random_state(std::size_t d, Engine& engine) {
  require(d >= 1, kModule, "dimension must be >= 1");
  std::normal_distribution<double> normal;
  Eigen::VectorXcd c(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double re = normal(engine);
    const double im = normal(engine);
    c(i) = Complex(re, im);
  }
  c.normalize();
  return c;
}

ObservableSpec random_observable(std::size_t d, Engine& engine) {
  require(d >= 1, kModule, "dimension must be >= 1");
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd b(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(engine);
      const double im = normal(engine);
      b(i, j) = Complex(re, im);
    }
  }
  Eigen::MatrixXcd h = 0.5 * (b + b.adjoint());
  auto spec = make_observable(h);
  if (spec.norm > 0.0) spec = make_observable((h / spec.norm).eval());
  return spec;
}

}  // namespace nores::equilibration
