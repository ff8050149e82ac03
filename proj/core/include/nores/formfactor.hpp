// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nores/rmt.hpp"
#include "nores/spectral.hpp"
#include "nores/stats.hpp"

namespace nores::formfactor {

// Time is measured in the units of the large-N closed forms below, where the
// ramp ends at t_H = pi N / 2. For an unfolded spectrum (unit mean spacing)
// the phase is exp(i eps t_unf) with t_unf = 4 t / N, so t_H maps to 2 pi.

double heisenberg_time(int N);

/// Two-level form factor closed forms.
///   GUE: 2t/(pi N^2) for t <= pi N/2, else 1/N.
///   GOE: 4t/(pi N^2) + (2t/(pi N^2)) ln(1 + 4t/(pi N)) for t <= pi N/2,
///        else 2/N + (2t/(pi N^2)) ln((4t/(pi N) + 1)/(4t/(pi N) - 1)).
/// The GOE plateau tends to 3/N as written.
double k2_analytic(double t, int N, rmt::Ensemble ensemble);

/// The two branches separately, for continuity checks at t_H.
double k2_ramp_branch(double t, int N, rmt::Ensemble ensemble);
double k2_plateau_branch(double t, int N, rmt::Ensemble ensemble);

/// (1/T) int_0^T k2_analytic dt in closed form.
double k2_time_average(double T, int N, rmt::Ensemble ensemble);

/// Bracket constant c in the commonly quoted GOE average c / T at T = N:
/// 3/(2 pi) - (pi/16) ln(1 + 4/pi) + (1/pi) ln(1 + 4/pi) + 3 pi / 32 + 1/4.
double goe_quoted_bracket();

/// The same constant obtained from k2_time_average(N, N, GOE) * N; it lacks
/// the 3 pi / 32 term.
double goe_exact_bracket();

/// <mu_2(T)> = k2_time_average(T, N) * x^2 with x = tr(A (rho - omega)).
/// Only q = 2 has a closed form here.
double mu2_expectation_rmt(double T, int N, rmt::Ensemble ensemble, double x, int q = 2);

enum class CurveKind { kAnalytic, kEmpirical };

struct FormFactorCurve {
  rmt::Ensemble ensemble = rmt::Ensemble::GUE;
  int N = 0;
  CurveKind kind = CurveKind::kAnalytic;
  std::vector<double> times;
  std::vector<double> values;           // K, full double sum for empirical curves
  std::vector<double> standard_errors;  // empirical only
  std::vector<double> disconnected;     // |<sum exp(i eps t)>|^2 / N^2, empirical only
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

FormFactorCurve analytic_curve(const std::vector<double>& times, int N, rmt::Ensemble ensemble);

/// Uniform grid; log-spaced when `logarithmic` (requires tmin > 0).
std::vector<double> time_grid(double tmin, double tmax, std::size_t points, bool logarithmic);

inline constexpr std::size_t kMinSamples = 10;

struct EmpiricalOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  spectral::UnfoldingConfig unfolding{};
};

/// |sum_k exp(i eps_k t_unf)|^2 / N^2 on every grid time for one unfolded
/// spectrum.
std::vector<double> sff_single(const std::vector<double>& epsilons, const std::vector<double>& times);

/// Monte Carlo SFF over `samples` seeded, unfolded ensemble members.
FormFactorCurve empirical_sff(rmt::Ensemble ensemble, int N, const std::vector<double>& times,
                              const EmpiricalOptions& options);

/// Per-sample averages of the SFF over the given times, then their mean and
/// standard error across samples. Used for plateau estimates.
stats::MeanEstimate plateau_estimate(rmt::Ensemble ensemble, int N, const std::vector<double>& window,
                                     const EmpiricalOptions& options);

}  // namespace nores::formfactor
