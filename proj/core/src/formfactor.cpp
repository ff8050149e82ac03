// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/formfactor.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "nores/errors.hpp"
#include "nores/parallel.hpp"
#include "nores/random.hpp"

namespace nores::formfactor {
namespace {

constexpr std::string_view kModule = "formfactor";
constexpr double kPi = std::numbers::pi;

void check_N(int N) { require(N >= 2, kModule, "N must be >= 2"); }

// ln((a t + 1) / (a t - 1)) for a t > 1 without cancellation at large t.
double plateau_log(double at) { return std::log1p(2.0 / (at - 1.0)); }

// int_0^tau [4t/(pi N^2) + (2t/(pi N^2)) ln(1 + a t)] dt, a = 4/(pi N).
double goe_ramp_integral(double tau, double N) {
  const double a = 4.0 / (kPi * N);
  const double c = 2.0 / (kPi * N * N);
  const double l = std::log1p(a * tau);
  const double t_log_t = 0.5 * tau * tau * l - 0.5 * (0.5 * tau * tau - tau / a + l / (a * a));
  return 2.0 * tau * tau / (kPi * N * N) + c * t_log_t;
}

// Antiderivative of t ln((a t + 1)/(a t - 1)).
double goe_plateau_antiderivative(double t, double a) {
  const double l = plateau_log(a * t);
  return 0.5 * t * t * l + t / a - l / (2.0 * a * a);
}

Eigen::VectorXd sample_spectrum(rmt::Ensemble ensemble, const rmt::EnsembleSpec& spec) {
  if (ensemble == rmt::Ensemble::GOE) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(rmt::sample_goe(spec), Eigen::EigenvaluesOnly)
        .eigenvalues();
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rmt::sample_gue(spec), Eigen::EigenvaluesOnly)
      .eigenvalues();
}

std::vector<double> unfolded_member(rmt::Ensemble ensemble, int N, std::uint64_t seed, std::size_t index,
                                    const spectral::UnfoldingConfig& unfolding) {
  const auto spec = rmt::member(rmt::EnsembleSpec{ensemble, N, seed}, index);
  const Eigen::VectorXd ev = sample_spectrum(ensemble, spec);
  auto spectrum = spectral::make_spectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
  return spectral::unfold(spectrum, unfolding).epsilons;
}

std::complex<double> phase_sum(const std::vector<double>& epsilons, double t_unf) {
  std::complex<double> z{0.0, 0.0};
  for (double e : epsilons) z += std::polar(1.0, e * t_unf);
  return z;
}

}  // namespace

double heisenberg_time(int N) {
  check_N(N);
  return 0.5 * kPi * N;
}

double k2_ramp_branch(double t, int N, rmt::Ensemble ensemble) {
  check_N(N);
  const double n = N;
  if (ensemble == rmt::Ensemble::GUE) return 2.0 * t / (kPi * n * n);
  return 4.0 * t / (kPi * n * n) + (2.0 * t / (kPi * n * n)) * std::log1p(4.0 * t / (kPi * n));
}

double k2_plateau_branch(double t, int N, rmt::Ensemble ensemble) {
  check_N(N);
  const double n = N;
  if (ensemble == rmt::Ensemble::GUE) return 1.0 / n;
  require(t > heisenberg_time(N) / 2.0, kModule, "plateau branch needs 4t/(pi N) > 1");
  return 2.0 / n + (2.0 * t / (kPi * n * n)) * plateau_log(4.0 * t / (kPi * n));
}

double k2_analytic(double t, int N, rmt::Ensemble ensemble) {
  require(t >= 0.0, kModule, "t must be >= 0");
  return t <= heisenberg_time(N) ? k2_ramp_branch(t, N, ensemble) : k2_plateau_branch(t, N, ensemble);
}

double k2_time_average(double T, int N, rmt::Ensemble ensemble) {
  require(T > 0.0 && std::isfinite(T), kModule, "T must be positive");
  const double n = N;
  const double tau = heisenberg_time(N);
  if (ensemble == rmt::Ensemble::GUE) {
    if (T <= tau) return T / (kPi * n * n);
    return (tau * tau / (kPi * n * n) + (T - tau) / n) / T;
  }
  if (T <= tau) return goe_ramp_integral(T, n) / T;
  const double a = 4.0 / (kPi * n);
  const double plateau = 2.0 * (T - tau) / n + (2.0 / (kPi * n * n)) * (goe_plateau_antiderivative(T, a) -
                                                                        goe_plateau_antiderivative(tau, a));
  return (goe_ramp_integral(tau, n) + plateau) / T;
}

double goe_quoted_bracket() {
  const double l = std::log1p(4.0 / kPi);
  return 3.0 / (2.0 * kPi) - (kPi / 16.0) * l + l / kPi + 3.0 * kPi / 32.0 + 0.25;
}

double goe_exact_bracket() {
  const double l = std::log1p(4.0 / kPi);
  return 3.0 / (2.0 * kPi) - (kPi / 16.0) * l + l / kPi + 0.25;
}

double mu2_expectation_rmt(double T, int N, rmt::Ensemble ensemble, double x, int q) {
  require(q == 2, kModule, "only q = 2 has a closed form (got q = " + std::to_string(q) + ")");
  return k2_time_average(T, N, ensemble) * x * x;
}

FormFactorCurve analytic_curve(const std::vector<double>& times, int N, rmt::Ensemble ensemble) {
  FormFactorCurve curve;
  curve.ensemble = ensemble;
  curve.N = N;
  curve.kind = CurveKind::kAnalytic;
  curve.times = times;
  curve.values.reserve(times.size());
  for (double t : times) curve.values.push_back(k2_analytic(t, N, ensemble));
  return curve;
}

std::vector<double> time_grid(double tmin, double tmax, std::size_t points, bool logarithmic) {
  require(points >= 2, kModule, "a time grid needs at least 2 points");
  require(tmin >= 0.0 && tmax > tmin, kModule, "time grid needs 0 <= tmin < tmax");
  require(!logarithmic || tmin > 0.0, kModule, "a logarithmic grid needs tmin > 0");
  std::vector<double> grid(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / last;
    grid[i] = logarithmic ? tmin * std::pow(tmax / tmin, f) : tmin + (tmax - tmin) * f;
  }
  grid.back() = tmax;
  return grid;
}

std::vector<double> sff_single(const std::vector<double>& epsilons, const std::vector<double>& times) {
  require(!epsilons.empty(), kModule, "empty spectrum");
  const double n = static_cast<double>(epsilons.size());
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(std::norm(phase_sum(epsilons, 4.0 * t / n)) / (n * n));
  return out;
}

FormFactorCurve empirical_sff(rmt::Ensemble ensemble, int N, const std::vector<double>& times,
                              const EmpiricalOptions& options) {
  check_N(N);
  require(options.samples >= kMinSamples, kModule, "empirical SFF needs at least 10 samples");
  require(!times.empty(), kModule, "empty time grid");
  for (double t : times) require(t >= 0.0, kModule, "times must be >= 0");

  const std::size_t m = options.samples;
  const std::size_t nt = times.size();
  std::vector<double> k(m * nt);
  std::vector<std::complex<double>> z(m * nt);
  parallel_for(m, [&](std::size_t s) {
    const auto eps = unfolded_member(ensemble, N, options.seed, s, options.unfolding);
    const double n = static_cast<double>(eps.size());
    for (std::size_t i = 0; i < nt; ++i) {
      const auto sum = phase_sum(eps, 4.0 * times[i] / n);
      z[s * nt + i] = sum / n;
      k[s * nt + i] = std::norm(sum) / (n * n);
    }
  });

  FormFactorCurve curve;
  curve.ensemble = ensemble;
  curve.N = N;
  curve.kind = CurveKind::kEmpirical;
  curve.times = times;
  curve.samples = m;
  curve.seed = options.seed;
  std::vector<double> column(m);
  for (std::size_t i = 0; i < nt; ++i) {
    std::complex<double> mean_z{0.0, 0.0};
    for (std::size_t s = 0; s < m; ++s) {
      column[s] = k[s * nt + i];
      mean_z += z[s * nt + i];
    }
    mean_z /= static_cast<double>(m);
    const auto est = stats::mean_and_stderr(column);
    curve.values.push_back(est.mean);
    curve.standard_errors.push_back(est.standard_error);
    curve.disconnected.push_back(std::norm(mean_z));
  }
  return curve;
}

stats::MeanEstimate plateau_estimate(rmt::Ensemble ensemble, int N, const std::vector<double>& window,
                                     const EmpiricalOptions& options) {
  check_N(N);
  require(options.samples >= kMinSamples, kModule, "plateau estimate needs at least 10 samples");
  require(!window.empty(), kModule, "empty plateau window");
  std::vector<double> per_sample(options.samples);
  parallel_for(options.samples, [&](std::size_t s) {
    const auto eps = unfolded_member(ensemble, N, options.seed, s, options.unfolding);
    const auto values = sff_single(eps, window);
    double total = 0.0;
    for (double v : values) total += v;
    per_sample[s] = total / static_cast<double>(values.size());
  });
  return stats::mean_and_stderr(per_sample);
}

}  // namespace nores::formfactor
