// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "nores/equilibration.hpp"
#include "nores/errors.hpp"
#include "nores/parallel.hpp"
#include "nores/random.hpp"
#include "nores/resonance.hpp"

namespace nores::pipeline {
namespace {

constexpr std::string_view kModule = "pipeline";

// Bootstrap work above this many draws falls back to the plain standard error.
constexpr double kMaxBootstrapDraws = 2e8;

nlohmann::json sector_json(const chain::ChainSpec& spec) {
  nlohmann::json s{{"mz", spec.sector.mz}, {"parity", spec.sector.parity}, {"spin_flip", spec.sector.spin_flip}};
  s["k"] = spec.sector.k ? nlohmann::json(*spec.sector.k) : nlohmann::json(nullptr);
  return s;
}

nlohmann::json ks_or_null(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.size() < stats::kMinKsSamples) return nullptr;
  return stats::ks_distance(samples, cdf);
}

stats::RatioStatistics pool(const std::vector<stats::RatioStatistics>& parts) {
  stats::RatioStatistics out;
  for (const auto& p : parts) {
    out.ratios.insert(out.ratios.end(), p.ratios.begin(), p.ratios.end());
    out.zero_pairs += p.zero_pairs;
  }
  double total = 0.0;
  for (double r : out.ratios) total += r;
  out.mean = out.ratios.empty() ? 0.0 : total / static_cast<double>(out.ratios.size());
  if (out.ratios.empty()) out.diagnostic = "no ratio could be formed";
  return out;
}

}  // namespace

Source parse_source(std::string_view name) {
  if (name == "chain") return Source::kChain;
  if (name == "goe") return Source::kGOE;
  if (name == "gue") return Source::kGUE;
  throw ValidationError(kModule, "unknown source '" + std::string(name) + "' (expected chain, goe or gue)");
}

std::string_view to_string(Source source) {
  switch (source) {
    case Source::kChain: return "chain";
    case Source::kGOE: return "goe";
    case Source::kGUE: return "gue";
  }
  return "unknown";
}

nlohmann::json describe(const SpectrumRequest& request) {
  nlohmann::json d{{"source", to_string(request.source)}};
  if (request.source == Source::kChain) {
    const auto& c = request.chain.couplings;
    d["L"] = request.chain.L;
    d["sector"] = sector_json(request.chain);
    d["couplings"] = {{"J1", c.J1}, {"g1", c.g1}, {"J2", c.J2}, {"g2", c.g2}};
  } else {
    d["N"] = request.N;
    d["seed"] = request.seed;
    d["realizations"] = request.realizations;
  }
  return d;
}

spectral::Spectrum generate_spectrum(const SpectrumRequest& request, std::size_t index) {
  if (request.source == Source::kChain) {
    require(index == 0, kModule, "a chain spectrum has a single realization");
    chain::validate(request.chain);
    const auto basis = chain::enumerate_sector_basis(request.chain);
    require(basis.dimension() > 0, kModule, "the requested sector is empty");
    auto source = describe(request);
    source["dimension"] = basis.dimension();
    if (chain::has_real_representation(request.chain)) {
      return spectral::eigenvalues(chain::build_hamiltonian(request.chain, basis), source);
    }
    return spectral::eigenvalues(chain::build_hamiltonian_complex(request.chain, basis), source);
  }
  const auto kind = request.source == Source::kGOE ? rmt::Ensemble::GOE : rmt::Ensemble::GUE;
  const auto spec = rmt::member(rmt::EnsembleSpec{kind, request.N, request.seed}, index);
  nlohmann::json source{{"source", to_string(request.source)}, {"N", request.N}, {"seed", request.seed},
                        {"member", index}};
  if (kind == rmt::Ensemble::GOE) return spectral::eigenvalues(rmt::sample_goe(spec), source);
  return spectral::eigenvalues(rmt::sample_gue(spec), source);
}

std::vector<double> normalized_spacings(std::span<const double> levels) {
  auto s = spectral::spacings(levels);
  require(!s.empty(), kModule, "need at least two levels for spacings");
  double total = 0.0;
  for (double x : s) total += x;
  const double mean = total / static_cast<double>(s.size());
  require(mean > 0.0, kModule, "all spacings are zero");
  for (double& x : s) x /= mean;
  return s;
}

nlohmann::json ratio_summary(const stats::RatioStatistics& ratios, std::size_t bootstrap, std::uint64_t seed) {
  const auto refs = stats::mean_ratio_references();
  nlohmann::json out{{"count", ratios.count()},
                     {"zero_pairs", ratios.zero_pairs},
                     {"reference_goe", refs.goe},
                     {"reference_poisson", refs.poisson}};
  if (ratios.count() == 0) {
    out["mean"] = nullptr;
    out["diagnostic"] = ratios.diagnostic;
    return out;
  }
  out["mean"] = ratios.mean;
  out["stderr"] = ratios.count() >= 2 ? nlohmann::json(stats::mean_and_stderr(ratios.ratios).standard_error)
                                      : nlohmann::json(nullptr);
  const double draws = static_cast<double>(ratios.count()) * static_cast<double>(bootstrap);
  if (ratios.count() >= 2 && bootstrap >= 2 && draws <= kMaxBootstrapDraws) {
    out["bootstrap_stderr"] = stats::bootstrap_mean(ratios.ratios, bootstrap, seed).standard_error;
  } else {
    out["bootstrap_stderr"] = nullptr;
  }
  out["ks_goe"] = ks_or_null(ratios.ratios, stats::goe_ratio_cdf);
  out["ks_poisson"] = ks_or_null(ratios.ratios, stats::poisson_ratio_cdf);
  return out;
}

nlohmann::json spacing_summary(const std::vector<double>& s) {
  const auto small = std::count_if(s.begin(), s.end(), [](double x) { return x < kSmallGapEps; });
  return nlohmann::json{
      {"count", s.size()},
      {"ks_wigner", ks_or_null(s, stats::wigner_cdf)},
      {"ks_poisson", ks_or_null(s, stats::poisson_spacing_cdf)},
      {"small_gap",
       {{"eps", kSmallGapEps},
        {"fraction", s.empty() ? 0.0 : static_cast<double>(small) / static_cast<double>(s.size())},
        {"goe", stats::small_gap_probability(kSmallGapEps, stats::GapModel::kGOE)},
        {"poisson", stats::small_gap_probability(kSmallGapEps, stats::GapModel::kPoisson)}}}};
}

QStatsResult run_qstats(const QStatsParams& params) {
  require(params.q >= 1, kModule, "q must be >= 1");
  require(params.bins >= 1, kModule, "bins must be >= 1");
  const auto& req = params.spectrum;
  const std::size_t count = req.source == Source::kChain ? 1 : req.realizations;
  require(count >= 1, kModule, "need at least one realization");

  std::vector<stats::RatioStatistics> parts(count);
  std::vector<std::vector<double>> spacing_parts(count);
  std::vector<std::size_t> sum_counts(count);
  std::vector<std::size_t> dims(count);
  std::atomic<bool> spacing_skipped{false};
  parallel_for(count, [&](std::size_t i) {
    const auto spectrum = generate_spectrum(req, i);
    dims[i] = spectrum.size();
    auto base = params.unfold ? spectral::make_spectrum(spectral::unfold(spectrum, params.unfolding).epsilons)
                              : spectrum;
    const auto sums = qsum::build_qsum(base, params.q, params.qsum);
    sum_counts[i] = sums.count();
    const auto bulk = spectral::bulk(sums.sums, params.bulk_fraction);
    parts[i] = stats::ratios(spectral::spacings(bulk));
    if (!params.unfold) return;
    if (params.q == 1) {
      spacing_parts[i] = normalized_spacings(bulk);
    } else if (sums.count() <= kMaxSpacingSums) {
      const auto again = spectral::unfold(spectral::make_spectrum(sums.sums), params.unfolding);
      spacing_parts[i] = normalized_spacings(spectral::bulk(again.epsilons, params.bulk_fraction));
    } else {
      spacing_skipped = true;
    }
  });

  QStatsResult result;
  const auto pooled = pool(parts);
  result.ratios = pooled.ratios;
  for (const auto& p : spacing_parts) result.spacings.insert(result.spacings.end(), p.begin(), p.end());

  auto& s = result.summary;
  s["pipeline"] = "qstats";
  s["spectrum"] = describe(req);
  s["q"] = params.q;
  s["unfold"] = params.unfold;
  if (params.unfold) s["unfolding"] = {{"alpha", params.unfolding.alpha},
                                       {"broadening_factor", params.unfolding.broadening_factor}};
  s["bulk_fraction"] = params.bulk_fraction;
  s["dimensions"] = dims;
  s["sums_per_realization"] = sum_counts;
  s["ratios"] = ratio_summary(pooled, params.bootstrap, derive_seed(req.seed, "pipeline.bootstrap"));

  result.ratio_histogram = stats::histogram(pooled.ratios, 0.0, 1.0, params.bins);
  if (params.unfold && !spacing_skipped) {
    s["spacings"] = spacing_summary(result.spacings);
    result.spacing_histogram = stats::histogram(result.spacings, 0.0, kSpacingRange, params.bins);
  } else {
    s["spacings"] = nullptr;
  }
  return result;
}

nlohmann::json run_equilibration(const EquilibrationParams& params) {
  namespace eq = equilibration;
  const auto& spectrum = params.spectrum;
  const std::size_t d = spectrum.size();
  require(d >= 1, kModule, "empty spectrum");
  require(params.q >= 1, kModule, "q must be >= 1");

  Eigen::VectorXcd c;
  if (params.state) {
    c = *params.state;
  } else {
    Engine engine = make_engine(params.seed, "equilibration.state");
    c = eq::random_state(d, engine);
  }
  eq::ObservableSpec a;
  if (params.observable) {
    a = eq::make_observable(*params.observable);
  } else {
    Engine engine = make_engine(params.seed, "equilibration.observable");
    a = eq::random_observable(d, engine);
  }
  require(static_cast<std::size_t>(c.size()) == d, kModule, "state dimension does not match the spectrum");

  const auto omega = eq::diagonal_ensemble(c);
  const double tol = params.tolerance.value_or(eq::default_resonance_tolerance(spectrum));
  const std::size_t steps = params.steps > 0 ? params.steps : eq::required_steps(params.T, spectrum);
  const double mu_t = eq::mu_q_timeavg(params.T, spectrum, c, a, params.q, steps);

  nlohmann::json out{{"pipeline", "equilibration"}, {"source", spectrum.source}, {"dimension", d},
                     {"q", params.q},               {"T", params.T},            {"steps", steps},
                     {"seed", params.seed},         {"tolerance", tol},         {"purity", omega.purity},
                     {"norm", a.norm},              {"A_bar", eq::infinite_time_average(c, a)}};
  out["mu_q_timeavg"] = mu_t;

  const double pairs = static_cast<double>(d) * static_cast<double>(d > 0 ? d - 1 : 0);
  std::optional<double> mu_exact;
  if (std::pow(pairs, params.q) <= static_cast<double>(eq::kMaxResonantTerms)) {
    mu_exact = eq::mu_q_resonant_sum(spectrum, c, a, params.q, tol);
  }
  out["mu_q_resonant_sum"] = mu_exact ? nlohmann::json(*mu_exact) : nlohmann::json(nullptr);

  std::optional<double> n_qL;
  const auto tuples = qsum::binomial(d, static_cast<std::uint64_t>(params.q));
  if (static_cast<std::size_t>(params.q) <= d && tuples && *tuples <= qsum::QSumOptions{}.cap) {
    n_qL = static_cast<double>(
        resonance::exceptional_multiplicity(resonance::find_violations(spectrum, params.q, tol)).max_multiplicity);
  }
  out["N_qL"] = n_qL ? nlohmann::json(*n_qL) : nlohmann::json(nullptr);

  std::optional<double> n_eps;
  const double eps = tol > 0.0 ? tol : eq::default_resonance_tolerance(spectrum);
  if (params.q == 2 && d <= resonance::kMaxGapSpectrum) {
    n_eps = d >= 2 && eps > 0.0 ? static_cast<double>(resonance::n_epsilon(spectrum, eps)) : 0.0;
  }
  out["N_eps"] = n_eps ? nlohmann::json(*n_eps) : nlohmann::json(nullptr);
  out["eps"] = eps;

  const double measured = std::abs(mu_exact.value_or(mu_t));
  nlohmann::json bounds;
  nlohmann::json holds;
  auto add = [&](const char* name, std::optional<double> value) {
    bounds[name] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
    holds[name] = value ? nlohmann::json(measured <= *value) : nlohmann::json(nullptr);
  };
  add("riddell", eq::bound_riddell(a, omega, params.q));
  add("theorem1", n_qL ? std::optional(eq::bound_theorem1(a, omega, params.q, *n_qL)) : std::nullopt);
  if (params.q == 2) {
    add("short", eq::bound_short(a, omega));
    add("theorem1_q2_quoted", n_qL ? std::optional(eq::bound_theorem1_q2_quoted(a, omega, *n_qL)) : std::nullopt);
    add("farrelly", n_eps ? std::optional(eq::bound_farrelly(a, omega, *n_eps)) : std::nullopt);
  }
  out["bounds"] = bounds;
  out["measured"] = {{"value", measured}, {"from", mu_exact ? "resonant_sum" : "timeavg"}};
  out["bound_holds"] = holds;
  return out;
}

SffResult run_sff(const SffParams& params) {
  const auto grid = formfactor::time_grid(params.tmin, params.tmax, params.points, params.logarithmic);
  SffResult result;
  result.empirical = formfactor::empirical_sff(params.ensemble, params.N, grid,
                                               formfactor::EmpiricalOptions{params.samples, params.seed,
                                                                            params.unfolding});
  result.analytic = formfactor::analytic_curve(grid, params.N, params.ensemble);

  const double t_h = formfactor::heisenberg_time(params.N);
  double plateau_sum = 0.0;
  double plateau_ref = 0.0;
  std::size_t plateau_points = 0;
  std::size_t ramp_points = 0;
  std::size_t ramp_within = 0;
  double max_disc = 0.0;
  const auto& e = result.empirical;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    if (t >= 2.0 * t_h) {
      plateau_sum += e.values[i];
      plateau_ref += result.analytic.values[i];
      ++plateau_points;
    }
    if (t > 0.0 && t <= t_h && e.disconnected[i] < 0.1 * result.analytic.values[i]) {
      ++ramp_points;
      const double expected = result.analytic.values[i] + e.disconnected[i];
      if (std::abs(e.values[i] - expected) <= 3.0 * e.standard_errors[i]) ++ramp_within;
    }
    max_disc = std::max(max_disc, e.disconnected[i]);
  }

  auto& s = result.summary;
  s["pipeline"] = "sff";
  s["ensemble"] = rmt::to_string(params.ensemble);
  s["N"] = params.N;
  s["samples"] = params.samples;
  s["seed"] = params.seed;
  s["grid"] = {{"tmin", params.tmin}, {"tmax", params.tmax}, {"points", params.points},
               {"logarithmic", params.logarithmic}};
  s["heisenberg_time"] = t_h;
  s["plateau"] = {{"window_start", 2.0 * t_h}, {"points", plateau_points}};
  s["plateau"]["mean"] = plateau_points ? nlohmann::json(plateau_sum / plateau_points) : nlohmann::json(nullptr);
  s["plateau"]["analytic"] = plateau_points ? nlohmann::json(plateau_ref / plateau_points) : nlohmann::json(nullptr);
  s["ramp"] = {{"points", ramp_points}, {"within_3_stderr", ramp_within}};
  s["max_disconnected"] = max_disc;
  s["analytic_time_average"] = {
      {"T_tmax", formfactor::k2_time_average(params.tmax, params.N, params.ensemble)},
      {"T_N", formfactor::k2_time_average(params.N, params.N, params.ensemble)}};
  return result;
}

nlohmann::json resonance_summary(const spectral::Spectrum& spectrum, int q, double tol,
                                 std::optional<double> pseudo_eps, const qsum::QSumOptions& options) {
  const auto violations = resonance::find_violations(spectrum, q, tol, options);
  const auto mult = resonance::exceptional_multiplicity(violations);
  nlohmann::json out{{"pipeline", "resonance"},
                     {"source", spectrum.source},
                     {"q", q},
                     {"tolerance", tol},
                     {"violations", violations.size()},
                     {"N_qL", mult.max_multiplicity},
                     {"max_first_slot", mult.max_first_slot}};
  if (pseudo_eps) {
    const auto sums = qsum::build_qsum(spectrum, q, options);
    out["pseudo_violations"] = {{"eps", *pseudo_eps},
                                {"count", resonance::pseudo_violation_count(sums.sums, *pseudo_eps)}};
  }
  return out;
}

}  // namespace nores::pipeline
