// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "nores/random.hpp"
#include "nores/spectral.hpp"

namespace nores::equilibration {

// Everything here works in the energy eigenbasis: the initial state is the
// coefficient vector c (|psi> = sum_m c_m |E_m>) and observables are
// Hermitian matrices A_mn = <E_m|A|E_n>. Then
//
//   <A(t)> = sum_{m,n} conj(c_m) c_n A_mn exp(i (E_m - E_n) t).

/// Dephased state omega = sum_m |c_m|^2 |E_m><E_m|.
struct DiagonalEnsemble {
  std::vector<double> populations;
  double purity = 0.0;  // tr omega^2
};

/// Requires sum |c_m|^2 == 1 within 1e-12.
DiagonalEnsemble diagonal_ensemble(const Eigen::VectorXcd& c);

struct ObservableSpec {
  Eigen::MatrixXcd matrix;
  double norm = 0.0;  // largest singular value
};

/// Rejects non-Hermitian input and computes the operator norm.
ObservableSpec make_observable(Eigen::MatrixXcd matrix);

/// A_bar = tr(omega A) = sum_m |c_m|^2 A_mm.
double infinite_time_average(const Eigen::VectorXcd& c, const ObservableSpec& a);

/// Largest admissible time step for mu_q_timeavg: pi / (4 max|E_i - E_j|).
double max_time_step(const spectral::Spectrum& spectrum);

/// (1/T) int_0^T (<A(t)> - A_bar)^q dt by composite Simpson quadrature of the
/// exact trigonometric sum on `steps` intervals (rounded up to even). Rejects
/// grids coarser than max_time_step.
double mu_q_timeavg(double T, const spectral::Spectrum& spectrum, const Eigen::VectorXcd& c,
                    const ObservableSpec& a, int q, std::size_t steps);

/// Smallest even step count that satisfies the grid criterion for horizon T.
std::size_t required_steps(double T, const spectral::Spectrum& spectrum);

/// Guard on the (d(d-1))^q enumeration of mu_q_resonant_sum.
inline constexpr std::uint64_t kMaxResonantTerms = 50'000'000;

/// Exact infinite-time mu_q: the sum over q pairs (m_j != n_j) whose
/// frequencies E_{m_j} - E_{n_j} add to zero within tol of
/// prod_j conj(c_{m_j}) c_{n_j} A_{m_j n_j}. Diagonal pairs are excluded
/// because A_bar has been subtracted.
double mu_q_resonant_sum(const spectral::Spectrum& spectrum, const Eigen::VectorXcd& c, const ObservableSpec& a,
                         int q, double tol);

/// 1e-9 times the spectral spread.
double default_resonance_tolerance(const spectral::Spectrum& spectrum);

// Bounds on |mu_q|.

/// ||A||^2 tr omega^2 (valid for q = 2 without degenerate gaps).
double bound_short(const ObservableSpec& a, const DiagonalEnsemble& omega);

/// (q ||A|| sqrt(tr omega^2))^q.
double bound_riddell(const ObservableSpec& a, const DiagonalEnsemble& omega, int q);

/// ||A||^q (q^q + N_qL / (2q)) (tr omega^2)^{q/2}, with N_qL the largest number
/// of violations one level takes part in.
double bound_theorem1(const ObservableSpec& a, const DiagonalEnsemble& omega, int q, double n_qL);

/// ||A||^2 (1 + N_2L / 4) tr omega^2, the q = 2 specialization as it is
/// usually quoted. It does not follow from bound_theorem1 at q = 2, which
/// gives (4 + N_2L / 4); both are kept and reported.
double bound_theorem1_q2_quoted(const ObservableSpec& a, const DiagonalEnsemble& omega, double n_2L);

/// N(eps) ||A||^2 tr omega^2.
double bound_farrelly(const ObservableSpec& a, const DiagonalEnsemble& omega, double n_eps);

// Random instances.

/// Complex Gaussian coefficients normalized to one.
Eigen::VectorXcd random_state(std::size_t d, Engine& engine);

/// GUE-like Hermitian matrix rescaled to operator norm 1.
ObservableSpec random_observable(std::size_t d, Engine& engine);

}  // namespace nores::equilibration
