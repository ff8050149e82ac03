// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runs. One line per criterion on stdout; exit status 1 when any
// criterion fails. Detail lines go to stderr.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nores/chain.hpp"
#include "nores/equilibration.hpp"
#include "nores/formfactor.hpp"
#include "nores/pipeline.hpp"
#include "nores/random.hpp"
#include "nores/resonance.hpp"
#include "nores/spectral.hpp"
#include "nores/stats.hpp"
#include "oracles.hpp"

using namespace nores;
namespace eq = nores::equilibration;
namespace ff = nores::formfactor;
using rmt::Ensemble;
using std::numbers::pi;

namespace {

constexpr double kGoeMean = 0.535898384862245;      // 4 - 2 sqrt(3)
constexpr double kPoissonMean = 0.386294361119891;  // 2 ln 2 - 1

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Check::expect(bool cond, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  ok = ok && cond;
  std::fprintf(stderr, "    [%s] %s\n", cond ? "ok" : "FAIL", buf);
  if (!detail.empty()) detail += "; ";
  detail += buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void run(int number, double budget_seconds, const std::function<void(Check&)>& body) {
  std::fprintf(stderr, "criterion %d\n", number);
  Check check;
  const auto start = Clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.expect(false, "exception: %s", e.what());
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < budget_seconds, "runtime %.1f s (limit %.0f s)", elapsed, budget_seconds);
  if (!check.ok) ++failures;
  std::printf("criterion %d: %s  %s\n", number, check.ok ? "PASS" : "FAIL", check.detail.c_str());
  std::fflush(stdout);
}

pipeline::QStatsParams goe_qstats(int N, std::size_t realizations, int q, std::uint64_t seed) {
  pipeline::QStatsParams p;
  p.spectrum.source = pipeline::Source::kGOE;
  p.spectrum.N = N;
  p.spectrum.realizations = realizations;
  p.spectrum.seed = seed;
  p.q = q;
  return p;
}

pipeline::QStatsParams chain_qstats(int L, int q) {
  pipeline::QStatsParams p;
  p.spectrum.source = pipeline::Source::kChain;
  p.spectrum.chain = chain::maximally_resolved(L);
  p.q = q;
  return p;
}

// Ratio summary fields as plain numbers.
struct Ratios {
  double mean;
  double ks_goe;
  double ks_poisson;
  double bootstrap_stderr;
  std::size_t count;
  std::size_t dimension;
};

Ratios ratios_of(const pipeline::QStatsParams& p) {
  const auto result = pipeline::run_qstats(p);
  const auto& r = result.summary["ratios"];
  auto number = [](const nlohmann::json& j) { return j.is_null() ? NAN : j.get<double>(); };
  return {r["mean"].get<double>(),      number(r["ks_goe"]),
          number(r["ks_poisson"]),      number(r["bootstrap_stderr"]),
          r["count"].get<std::size_t>(), result.summary["dimensions"][0].get<std::size_t>()};
}

// True when E_m - E_n = E_k - E_l (within tol) only for (m, n) = (k, l).
bool nondegenerate_gaps(const std::vector<double>& e, double tol) {
  std::vector<double> gaps;
  for (std::size_t m = 0; m < e.size(); ++m)
    for (std::size_t n = 0; n < e.size(); ++n)
      if (m != n) gaps.push_back(e[m] - e[n]);
  std::sort(gaps.begin(), gaps.end());
  for (std::size_t i = 1; i < gaps.size(); ++i)
    if (gaps[i] - gaps[i - 1] <= tol) return false;
  return true;
}

// Full spectrum from every (mz, k, P, Z) sector, each resolved as far as the
// symmetry algebra allows.
std::vector<double> sector_union(int L, const chain::Couplings& couplings, std::size_t& sectors) {
  std::vector<double> all;
  for (int mz = -L / 2; mz <= L / 2; ++mz) {
    for (int k = 0; k < L; ++k) {
      const bool reflective = k == 0 || 2 * k == L;
      for (int p : reflective ? std::vector<int>{1, -1} : std::vector<int>{0}) {
        for (int z : mz == 0 ? std::vector<int>{1, -1} : std::vector<int>{0}) {
          const chain::ChainSpec spec{L, couplings, chain::Sector{mz, k, p, z}};
          const auto basis = chain::enumerate_sector_basis(spec);
          if (basis.dimension() == 0) continue;
          ++sectors;
          const auto s = chain::has_real_representation(spec)
                             ? spectral::eigenvalues(chain::build_hamiltonian(spec, basis))
                             : spectral::eigenvalues(chain::build_hamiltonian_complex(spec, basis));
          all.insert(all.end(), s.energies.begin(), s.energies.end());
        }
      }
    }
  }
  return all;
}

double quadrature_average(double T, int N, Ensemble e) {
  const double th = ff::heisenberg_time(N);
  auto k = [&](double t) { return ff::k2_analytic(t, N, e); };
  if (T <= th) return oracle::integrate(k, 0.0, T) / T;
  return (oracle::integrate(k, 0.0, th) + oracle::integrate(k, th, T)) / T;
}

}  // namespace

int main() {
  run(1, 300, [](Check& c) {
    const auto r = ratios_of(goe_qstats(2000, 20, 1, 11));
    c.expect(std::abs(r.mean - kGoeMean) < 0.01, "<r> = %.6f over %zu ratios", r.mean, r.count);
    c.expect(r.ks_goe < 0.02, "KS to GOE ratio law %.4f", r.ks_goe);
  });

  run(2, 600, [](Check& c) {
    const auto r = ratios_of(goe_qstats(1200, 1, 2, 12));
    c.expect(std::abs(r.mean - kPoissonMean) < 0.003, "<r> = %.6f over %zu ratios", r.mean, r.count);
    c.expect(r.ks_poisson < 0.02, "KS to Poisson ratio law %.4f", r.ks_poisson);
  });

  run(3, 4 * 900, [](Check& c) {
    for (int q : {3, 4}) {
      const auto r = ratios_of(goe_qstats(200, 1, q, 13));
      c.expect(std::abs(r.mean - kPoissonMean) < 0.01, "GOE N=200 q=%d <r> = %.6f (%zu ratios)", q, r.mean,
               r.count);
    }
    for (auto [L, q] : {std::pair{14, 3}, std::pair{14, 4}, std::pair{16, 3}}) {
      const auto r = ratios_of(chain_qstats(L, q));
      c.expect(std::abs(r.mean - kPoissonMean) < 0.01, "chain L=%d (dim %zu) q=%d <r> = %.6f", L, r.dimension, q,
               r.mean);
    }
  });

  run(4, 1200, [](Check& c) {
    const auto r = ratios_of(chain_qstats(18, 1));
    const double margin = std::abs(r.mean - kPoissonMean) - std::abs(r.mean - kGoeMean);
    c.expect(margin >= 3.0 * r.bootstrap_stderr, "L=18 dim %zu <r> = %.4f +- %.4f, margin %.4f", r.dimension,
             r.mean, r.bootstrap_stderr, margin);
  });

  run(5, 600, [](Check& c) {
    auto p = goe_qstats(2000, 20, 1, 15);
    p.unfold = true;
    const auto s = pipeline::run_qstats(p).summary["spacings"];
    const double ks = s["ks_wigner"].get<double>();
    c.expect(ks < 0.03, "KS to Wigner surmise %.4f over %zu spacings", ks, s["count"].get<std::size_t>());
    const double fraction = s["small_gap"]["fraction"].get<double>();
    const double expected = 1.0 - std::exp(-pi * 0.01 / 4.0);
    c.expect(std::abs(fraction / expected - 1.0) < 0.3, "fraction below 0.1 is %.5f vs %.5f", fraction, expected);
  });

  run(6, 600, [](Check& c) {
    Engine engine = make_engine(16, "acceptance.bounds");
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::size_t worst_instance = 0;
    double worst_ratio = 0.0;
    std::size_t violations = 0;
    std::size_t resonant = 0;
    std::size_t short_checked = 0;
    std::size_t short_exceeded_degenerate = 0;
    for (std::size_t i = 0; i < 200; ++i) {
      const std::size_t d = 3 + i % 8;
      const int q = i % 2 == 0 ? 2 : 3;
      std::vector<double> e(d);
      switch (i / 2 % 4) {
        case 0:
        case 1:
          for (double& x : e) x = uniform(engine);
          break;
        case 2: {  // distinct random integers
          std::vector<int> pool(3 * d);
          std::iota(pool.begin(), pool.end(), 0);
          std::shuffle(pool.begin(), pool.end(), engine);
          for (std::size_t j = 0; j < d; ++j) e[j] = pool[j];
          break;
        }
        default:  // equally spaced
          for (std::size_t j = 0; j < d; ++j) e[j] = static_cast<double>(j);
      }
      const auto s = spectral::make_spectrum(e);
      Eigen::VectorXcd state;
      eq::ObservableSpec a;
      if (i % 16 == 6 || i % 16 == 7) {
        // Flat state with the nearest-neighbour shift, the tightest case on a ladder.
        const auto n = static_cast<Eigen::Index>(d);
        state = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(d)));
        Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index j = 0; j + 1 < n; ++j) shift(j + 1, j) = 1.0;
        a = eq::make_observable(0.5 * (shift + shift.adjoint()));
      } else {
        state = eq::random_state(d, engine);
        a = eq::random_observable(d, engine);
      }
      const auto omega = eq::diagonal_ensemble(state);
      const double tol = eq::default_resonance_tolerance(s);
      const double mu = std::abs(eq::mu_q_resonant_sum(s, state, a, q, tol));
      const auto found = resonance::find_violations(s, q, tol);
      if (!found.pairs.empty()) ++resonant;
      std::vector<std::pair<const char*, double>> bounds{
          {"theorem1", eq::bound_theorem1(a, omega, q, resonance::exceptional_multiplicity(found).max_multiplicity)}};
      if (q == 2) {
        bounds.emplace_back("farrelly", eq::bound_farrelly(a, omega, resonance::n_epsilon(s, tol)));
        if (nondegenerate_gaps(e, tol)) {
          ++short_checked;
          bounds.emplace_back("short", eq::bound_short(a, omega));
        } else if (mu > eq::bound_short(a, omega)) {
          ++short_exceeded_degenerate;
        }
      }
      for (const auto& [name, bound] : bounds) {
        const double ratio = mu / bound;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst_instance = i;
        }
        if (mu > bound) {
          ++violations;
          std::fprintf(stderr, "    instance %zu (d=%zu q=%d): mu %.6g > %s %.6g\n", i, d, q, mu, name, bound);
        }
      }
    }
    c.expect(violations == 0, "%zu bound violations over 200 instances (%zu with resonances)", violations, resonant);
    std::fprintf(stderr, "    largest mu/bound %.4f at instance %zu; short applied to %zu non-degenerate q=2 "
                 "instances, exceeded on %zu degenerate ones\n",
                 worst_ratio, worst_instance, short_checked, short_exceeded_degenerate);
  });

  run(7, 300, [](Check& c) {
    struct Case {
      std::uint64_t violations;
      int L;
      std::size_t trials;
    };
    for (const auto& k : {Case{1024, 10, 20000}, Case{50, 12, 200000}, Case{14, 14, 200000}}) {
      const auto mc = resonance::monte_carlo_expected_exceptional(k.violations, k.L, k.trials, 17);
      const double formula = resonance::expected_exceptional(k.violations, k.L);
      c.expect(std::abs(mc.mean - formula) < 3.0 * mc.standard_error, "L=%d |S|=%llu: MC %.6g +- %.2g vs %.6g",
               k.L, static_cast<unsigned long long>(k.violations), mc.mean, mc.standard_error, formula);
    }
    const double limit = resonance::expected_exceptional(std::uint64_t{1} << 40, 40);
    c.expect(std::abs(limit - std::numbers::e) < 1e-6, "L=40 |S|=2^40 gives %.9f", limit);
  });

  run(8, 1800, [](Check& c) {
    double jump = 0.0;
    for (int N : {2, 10, 100, 400, 1000, 4096, 100000}) {
      const double th = ff::heisenberg_time(N);
      for (auto e : {Ensemble::GUE, Ensemble::GOE}) {
        const double left = ff::k2_ramp_branch(th, N, e);
        jump = std::max(jump, std::abs(left - ff::k2_plateau_branch(th, N, e)) / left);
      }
    }
    c.expect(jump <= 4 * std::numeric_limits<double>::epsilon(), "branch mismatch at t_H %.2g (relative)", jump);

    double gue = 0.0;
    for (int N : {10, 100, 400, 1000, 10000}) {
      const double T = N;
      gue = std::max(gue, std::abs(ff::k2_time_average(T, N, Ensemble::GUE) * pi * T - 1.0));
    }
    c.expect(gue <= 1e-10, "GUE average at T=N off 1/(pi T) by %.2g (relative)", gue);

    double quoted = 0.0;
    double exact = 0.0;
    for (int N : {100, 1000, 5000}) {
      const double T = N;
      const double q = quadrature_average(T, N, Ensemble::GOE);
      quoted = std::max(quoted, std::abs(ff::goe_quoted_bracket() / T - q) / q);
      exact = std::max(exact, std::abs(ff::goe_exact_bracket() / T - q) / q);
    }
    c.expect(quoted <= 1e-10, "GOE bracket %.7f vs quadrature: relative gap %.3g", ff::goe_quoted_bracket(), quoted);
    std::fprintf(stderr, "    closed-form bracket %.7f vs quadrature: relative gap %.3g\n", ff::goe_exact_bracket(),
                 exact);

    const int N = 400;
    const double th = ff::heisenberg_time(N);
    const auto window = ff::time_grid(4.0 * th, 40.0 * th, 200, false);
    const auto plateau = ff::plateau_estimate(Ensemble::GUE, N, window, {200, 18, {}});
    c.expect(std::abs(plateau.mean - 1.0 / N) < 3.0 * plateau.standard_error, "GUE plateau %.6g +- %.2g vs %.6g",
             plateau.mean, plateau.standard_error, 1.0 / N);
  });

  run(9, 600, [](Check& c) {
    const chain::Couplings couplings{};
    for (int L : {8, 10}) {
      std::size_t sectors = 0;
      const auto from_sectors = sector_union(L, couplings, sectors);
      const auto full = spectral::eigenvalues(oracle::full_chain_hamiltonian(L, couplings));
      const double diff = oracle::max_sorted_difference(from_sectors, full.energies);
      c.expect(diff < 1e-10, "L=%d: %zu levels from %zu sectors, max difference %.2g", L, from_sectors.size(), sectors,
               diff);
    }
  });

  std::printf("%s: %d failing\n", failures == 0 ? "all criteria pass" : "acceptance incomplete", failures);
  return failures == 0 ? 0 : 1;
}
