// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

// nores: spectra, q-sum statistics, resonances, equilibration bounds and
// spectral form factors from the command line.
//
// Exit codes: 0 success, 2 invalid input, 1 internal error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nores/chain.hpp"
#include "nores/errors.hpp"
#include "nores/io.hpp"
#include "nores/manifest.hpp"
#include "nores/parallel.hpp"
#include "nores/pipeline.hpp"
#include "nores/qsum.hpp"
#include "nores/resonance.hpp"
#include "nores/rmt.hpp"
#include "nores/spectral.hpp"
#include "nores/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Collects provenance for one invocation and writes outputs with a pointer
// to the shared manifest.
class Run {
 public:
  Run(int argc, char** argv) : start_(std::chrono::steady_clock::now()) {
    manifest_.command_line.assign(argv, argv + argc);
    manifest_.versions = nores::build_versions();
  }

  void seed(const std::string& name, std::uint64_t value) { manifest_.seeds[name] = value; }
  void input(const fs::path& path) { manifest_.input_hashes[path.string()] = nores::hash_file(path); }

  void json_output(const fs::path& path, json doc) {
    doc["manifest"] = manifest_name(path);
    nores::io::write_text(path, nores::io::dump(doc));
    manifest_.outputs.push_back(path.string());
  }

  // `render` receives the manifest file name for the CSV header line.
  template <class Render>
  void text_output(const fs::path& path, Render&& render) {
    nores::io::write_text(path, render(manifest_name(path)));
    manifest_.outputs.push_back(path.string());
  }

  void finish() {
    if (!manifest_path_) return;
    manifest_.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    nores::io::write_text(*manifest_path_, nores::io::dump(json(manifest_)));
  }

 private:
  // The first output names the manifest; later outputs share it.
  std::string manifest_name(const fs::path& path) {
    if (!manifest_path_) manifest_path_ = nores::manifest_path_for(path);
    return manifest_path_->filename().string();
  }

  nores::RunManifest manifest_;
  std::optional<fs::path> manifest_path_;
  std::chrono::steady_clock::time_point start_;
};

nores::spectral::Spectrum load_levels(Run& run, const fs::path& path) {
  run.input(path);
  return nores::io::levels_from_json(nores::io::read_json(path));
}

struct ChainFlags {
  int L = 16;
  int mz = 0;
  std::string k = "0";
  int parity = 1;
  int spin_flip = 1;
  nores::chain::Couplings couplings{};

  void add(CLI::App* app) {
    app->add_option("--L", L, "Chain length (even)");
    app->add_option("--mz", mz, "Total magnetization sector");
    app->add_option("--k", k, "Momentum index in [0, L), or 'none'");
    app->add_option("--P,--parity", parity, "Reflection eigenvalue +1/-1, 0 to leave unresolved");
    app->add_option("--Z,--spin-flip", spin_flip, "Spin-flip eigenvalue +1/-1, 0 to leave unresolved");
    app->add_option("--J1", couplings.J1, "Nearest-neighbour hopping");
    app->add_option("--g1", couplings.g1, "Nearest-neighbour Ising coupling");
    app->add_option("--J2", couplings.J2, "Next-nearest-neighbour hopping");
    app->add_option("--g2", couplings.g2, "Next-nearest-neighbour Ising coupling");
  }

  nores::chain::ChainSpec spec() const {
    nores::chain::ChainSpec s{L, couplings, {}};
    s.sector.mz = mz;
    if (k != "none") {
      try {
        s.sector.k = std::stoi(k);
      } catch (const std::exception&) {
        throw nores::ValidationError("cli", "--k must be an integer or 'none'");
      }
    }
    s.sector.parity = parity;
    s.sector.spin_flip = spin_flip;
    return s;
  }
};

struct RequestFlags {
  std::string source = "goe";
  int N = 200;
  std::uint64_t seed = 0;
  std::size_t realizations = 1;
  ChainFlags chain;

  void add(CLI::App* app) {
    app->add_option("--source", source, "chain, goe or gue")->check(CLI::IsMember({"chain", "goe", "gue"}));
    app->add_option("--N", N, "Random matrix size");
    app->add_option("--seed", seed, "Root seed");
    app->add_option("--realizations", realizations, "Random matrix realizations");
    chain.add(app);
  }

  nores::pipeline::SpectrumRequest request() const {
    nores::pipeline::SpectrumRequest r;
    r.source = nores::pipeline::parse_source(source);
    r.N = N;
    r.seed = seed;
    r.realizations = realizations;
    r.chain = chain.spec();
    return r;
  }
};

std::optional<nores::qsum::Strategy> parse_strategy(const std::string& name) {
  if (name == "sort") return nores::qsum::Strategy::kMaterializeSort;
  if (name == "heap") return nores::qsum::Strategy::kHeapMerge;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral statistics of q-sum spectra and equilibration bounds"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0 = hardware concurrency)");

  // chain-spectrum
  auto* chain_cmd = app.add_subcommand("chain-spectrum", "Exact diagonalization of one symmetry sector");
  ChainFlags chain_flags;
  bool all_sectors = false;
  fs::path chain_out;
  chain_flags.add(chain_cmd);
  chain_cmd->add_flag("--all-sectors", all_sectors, "Union of every (mz, k) sector, i.e. the full spectrum");
  chain_cmd->add_option("--out", chain_out, "Spectrum JSON")->required();

  // rmt-spectrum
  auto* rmt_cmd = app.add_subcommand("rmt-spectrum", "Eigenvalues of one GOE/GUE member");
  std::string rmt_kind = "goe";
  int rmt_N = 200;
  std::uint64_t rmt_seed = 0;
  std::uint64_t rmt_member = 0;
  fs::path rmt_out;
  rmt_cmd->add_option("--kind", rmt_kind, "goe or gue")->check(CLI::IsMember({"goe", "gue"}));
  rmt_cmd->add_option("--N", rmt_N, "Matrix size");
  rmt_cmd->add_option("--seed", rmt_seed, "Root seed");
  std::optional<std::size_t> rmt_samples;
  rmt_cmd->add_option("--member", rmt_member, "Ensemble member index");
  rmt_cmd->add_option("--samples", rmt_samples, "Write members 0..n-1 as spectrum_NNNN.json into --out");
  rmt_cmd->add_option("--out", rmt_out, "Spectrum JSON, or a directory with --samples")->required();

  // unfold
  auto* unfold_cmd = app.add_subcommand("unfold", "Gaussian-broadened staircase unfolding");
  fs::path unfold_in;
  fs::path unfold_out;
  nores::spectral::UnfoldingConfig unfolding;
  unfold_cmd->add_option("--in,--spectrum", unfold_in, "Spectrum JSON")->required()->check(CLI::ExistingFile);
  unfold_cmd->add_option("--alpha", unfolding.alpha, "Half-window in levels");
  unfold_cmd->add_option("--broadening", unfolding.broadening_factor, "sigma_j = factor * alpha * Delta_j");
  unfold_cmd->add_option("--out", unfold_out, "Unfolded JSON")->required();

  // qsum
  auto* qsum_cmd = app.add_subcommand("qsum", "Sorted sums of q distinct levels");
  fs::path qsum_in;
  fs::path qsum_out;
  int qsum_q = 2;
  std::string qsum_strategy = "sort";
  nores::qsum::QSumOptions qsum_options;
  qsum_cmd->add_option("--in,--spectrum", qsum_in, "Spectrum or unfolded JSON")->required()->check(CLI::ExistingFile);
  qsum_cmd->add_option("--q", qsum_q, "Number of levels per sum");
  qsum_cmd->add_option("--strategy", qsum_strategy, "sort or heap")->check(CLI::IsMember({"sort", "heap"}));
  qsum_cmd->add_flag("--compensated", qsum_options.compensated, "Neumaier summation");
  qsum_cmd->add_option("--cap", qsum_options.cap, "Largest admissible C(N, q)");
  qsum_cmd->add_option("--out", qsum_out, "q-sum JSON")->required();

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Gap-ratio or spacing histogram of a level list");
  fs::path stats_in;
  fs::path stats_out;
  fs::path stats_summary;
  fs::path stats_reference;
  std::string stats_kind = "ratio";
  double stats_bulk = nores::spectral::kBulkTrim;
  int stats_bins = 100;
  std::size_t stats_bootstrap = 1000;
  std::uint64_t stats_seed = 0;
  stats_cmd->add_option("--in,--spectrum", stats_in, "Spectrum, unfolded or q-sum JSON")
      ->required()
      ->check(CLI::ExistingFile);
  stats_cmd->add_option("--kind", stats_kind, "ratio, or spacing (unit-mean spacings of unfolded input)")
      ->check(CLI::IsMember({"ratio", "spacing"}));
  stats_cmd->add_option("--bulk", stats_bulk, "Fraction trimmed from each spectral edge");
  stats_cmd->add_option("--bins", stats_bins, "Histogram bins");
  stats_cmd->add_option("--bootstrap", stats_bootstrap, "Bootstrap resamples");
  stats_cmd->add_option("--seed", stats_seed, "Bootstrap seed");
  stats_cmd->add_option("--out", stats_out, "Histogram CSV")->required();
  stats_cmd->add_option("--summary-out", stats_summary, "Summary JSON");
  stats_cmd->add_option("--reference-out", stats_reference, "Reference density/CDF CSV");

  // resonance
  auto* res_cmd = app.add_subcommand("resonance", "Violations of the q no-resonance condition");
  fs::path res_in;
  fs::path res_out;
  fs::path res_pairs;
  int res_q = 2;
  std::optional<double> res_tol;
  std::optional<double> res_rel_tol;
  std::optional<double> res_eps;
  res_cmd->add_option("--in,--spectrum", res_in, "Spectrum JSON")->required()->check(CLI::ExistingFile);
  res_cmd->add_option("--q", res_q, "Sum size");
  auto* tol_opt = res_cmd->add_option("--tol", res_tol, "Absolute tolerance (default 1e-12 * width)");
  res_cmd->add_option("--rel-tol", res_rel_tol, "Tolerance relative to the spectral width")->excludes(tol_opt);
  res_cmd->add_option("--pseudo-eps", res_eps, "Also count consecutive q-sum gaps below eps");
  res_cmd->add_option("--out", res_out, "Summary JSON")->required();
  res_cmd->add_option("--pairs-out", res_pairs, "Violation pairs JSON");

  // equilibrate
  auto* eq_cmd = app.add_subcommand("equilibrate", "Equilibration moment and its bounds");
  fs::path eq_in;
  fs::path eq_out;
  std::string eq_state = "random";
  std::string eq_obs = "random";
  nores::pipeline::EquilibrationParams eq_params;
  std::optional<double> eq_tol;
  std::optional<double> eq_rel_tol;
  eq_cmd->add_option("--spectrum,--in", eq_in, "Spectrum JSON")->required()->check(CLI::ExistingFile);
  eq_cmd->add_option("--state", eq_state, "'random' or a JSON file with energy-basis coefficients");
  eq_cmd->add_option("--obs", eq_obs, "'random' or a JSON file with the energy-basis matrix");
  eq_cmd->add_option("--q", eq_params.q, "Moment order");
  eq_cmd->add_option("--T", eq_params.T, "Averaging horizon");
  eq_cmd->add_option("--steps", eq_params.steps, "Simpson intervals (0 = coarsest admissible)");
  auto* eq_tol_opt = eq_cmd->add_option("--tol", eq_tol, "Resonance tolerance (default 1e-9 * spread)");
  eq_cmd->add_option("--rel-tol", eq_rel_tol, "Resonance tolerance relative to the spread")->excludes(eq_tol_opt);
  eq_cmd->add_option("--seed", eq_params.seed, "Seed for random state and observable");
  eq_cmd->add_option("--out", eq_out, "Report JSON")->required();

  // sff
  auto* sff_cmd = app.add_subcommand("sff", "Monte Carlo two-level spectral form factor");
  nores::pipeline::SffParams sff_params;
  std::string sff_kind = "gue";
  bool sff_linear = false;
  fs::path sff_out;
  fs::path sff_summary;
  sff_cmd->add_option("--kind", sff_kind, "goe or gue")->check(CLI::IsMember({"goe", "gue"}));
  sff_cmd->add_option("--N", sff_params.N, "Matrix size");
  sff_cmd->add_option("--samples", sff_params.samples, "Ensemble members");
  sff_cmd->add_option("--tmin", sff_params.tmin, "First time");
  sff_cmd->add_option("--tmax", sff_params.tmax, "Last time");
  sff_cmd->add_option("--points", sff_params.points, "Grid points");
  sff_cmd->add_flag("--linear", sff_linear, "Uniform instead of logarithmic grid");
  sff_cmd->add_option("--seed", sff_params.seed, "Root seed");
  sff_cmd->add_option("--out", sff_out, "Curve CSV")->required();
  sff_cmd->add_option("--summary-out", sff_summary, "Summary JSON");

  // pipeline
  auto* pipe_cmd = app.add_subcommand("pipeline", "End-to-end runs writing a summary and its curves");
  std::string pipe_kind = "qstats";
  fs::path pipe_dir;
  RequestFlags pipe_request;
  nores::pipeline::QStatsParams pipe_q;
  int pipe_d = 8;
  pipe_cmd->add_option("--kind", pipe_kind, "qstats, equilibration or sff")
      ->check(CLI::IsMember({"qstats", "equilibration", "sff"}));
  pipe_cmd->add_option("--out-dir", pipe_dir, "Output directory")->required();
  pipe_request.add(pipe_cmd);
  pipe_cmd->add_option("--q", pipe_q.q, "Sum size (qstats) or moment order (equilibration)");
  pipe_cmd->add_flag("--unfold", pipe_q.unfold, "Unfold before forming q-sums (qstats)");
  pipe_cmd->add_option("--alpha", pipe_q.unfolding.alpha, "Unfolding half-window");
  pipe_cmd->add_option("--bulk", pipe_q.bulk_fraction, "Edge trim fraction");
  pipe_cmd->add_option("--bins", pipe_q.bins, "Histogram bins");
  pipe_cmd->add_option("--bootstrap", pipe_q.bootstrap, "Bootstrap resamples");
  pipe_cmd->add_option("--levels", pipe_d, "Random-matrix size for equilibration runs");
  pipe_cmd->add_option("--T", eq_params.T, "Averaging horizon (equilibration)");
  pipe_cmd->add_option("--samples", sff_params.samples, "Ensemble members (sff)");
  pipe_cmd->add_option("--tmin", sff_params.tmin, "First time (sff)");
  pipe_cmd->add_option("--tmax", sff_params.tmax, "Last time (sff)");
  pipe_cmd->add_option("--points", sff_params.points, "Grid points (sff)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Run run(argc, argv);
  try {
    nores::set_max_threads(threads);

    if (*chain_cmd) {
      std::vector<double> energies;
      json source;
      if (all_sectors) {
        for (const auto& spec : nores::chain::momentum_sectors(chain_flags.L, chain_flags.couplings)) {
          if (nores::chain::enumerate_sector_basis(spec).dimension() == 0) continue;
          nores::pipeline::SpectrumRequest req;
          req.source = nores::pipeline::Source::kChain;
          req.chain = spec;
          const auto part = nores::pipeline::generate_spectrum(req);
          energies.insert(energies.end(), part.energies.begin(), part.energies.end());
        }
        source = {{"source", "chain"}, {"L", chain_flags.L}, {"sectors", "all"}};
      } else {
        nores::pipeline::SpectrumRequest req;
        req.source = nores::pipeline::Source::kChain;
        req.chain = chain_flags.spec();
        auto s = nores::pipeline::generate_spectrum(req);
        energies = std::move(s.energies);
        source = s.source;
      }
      run.json_output(chain_out, nores::io::to_json(nores::spectral::make_spectrum(std::move(energies), source)));
    } else if (*rmt_cmd) {
      nores::pipeline::SpectrumRequest req;
      req.source = nores::pipeline::parse_source(rmt_kind);
      req.N = rmt_N;
      req.seed = rmt_seed;
      run.seed("rmt", rmt_seed);
      if (rmt_samples) {
        if (*rmt_samples < 1) throw nores::ValidationError("cli", "--samples must be >= 1");
        for (std::size_t i = 0; i < *rmt_samples; ++i) {
          char name[32];
          std::snprintf(name, sizeof name, "spectrum_%04zu.json", i);
          run.json_output(rmt_out / name, nores::io::to_json(nores::pipeline::generate_spectrum(req, i)));
        }
      } else {
        run.json_output(rmt_out, nores::io::to_json(nores::pipeline::generate_spectrum(req, rmt_member)));
      }
    } else if (*unfold_cmd) {
      const auto spectrum = load_levels(run, unfold_in);
      run.json_output(unfold_out, nores::io::to_json(nores::spectral::unfold(spectrum, unfolding)));
    } else if (*qsum_cmd) {
      const auto spectrum = load_levels(run, qsum_in);
      qsum_options.strategy = *parse_strategy(qsum_strategy);
      run.json_output(qsum_out, nores::io::to_json(nores::qsum::build_qsum(spectrum, qsum_q, qsum_options)));
    } else if (*stats_cmd) {
      run.input(stats_in);
      const auto doc = nores::io::read_json(stats_in);
      const auto levels = nores::io::levels_from_json(doc);
      const bool unfolded = doc.value("kind", "") == "unfolded";
      const auto bulk = nores::spectral::bulk(levels.energies, stats_bulk);
      const auto ratios = nores::stats::ratios(nores::spectral::spacings(bulk));
      run.seed("bootstrap", stats_seed);
      json summary{{"pipeline", "stats"}, {"source", levels.source}, {"bulk_fraction", stats_bulk},
                   {"levels", levels.size()}};
      summary["ratios"] = nores::pipeline::ratio_summary(ratios, stats_bootstrap, stats_seed);
      std::vector<double> spacings;
      if (unfolded) {
        spacings = nores::pipeline::normalized_spacings(bulk);
        summary["spacings"] = nores::pipeline::spacing_summary(spacings);
      } else {
        summary["spacings"] = nullptr;
      }
      nores::stats::Histogram h;
      if (stats_kind == "spacing") {
        if (!unfolded) throw nores::ValidationError("cli", "--kind spacing needs an unfolded spectrum");
        h = nores::stats::histogram(spacings, 0.0, nores::pipeline::kSpacingRange, stats_bins);
      } else {
        h = nores::stats::histogram(ratios.ratios, 0.0, 1.0, stats_bins);
      }
      run.text_output(stats_out, [&](const std::string& m) { return nores::io::histogram_csv(h, m); });
      if (!stats_summary.empty()) run.json_output(stats_summary, summary);
      if (!stats_reference.empty()) {
        run.text_output(stats_reference, [&](const std::string& m) {
          return nores::io::reference_curves_csv(nores::pipeline::kSpacingRange, 401, m);
        });
      }
    } else if (*res_cmd) {
      const auto spectrum = load_levels(run, res_in);
      double tol = nores::resonance::default_tolerance(spectrum);
      if (res_tol) tol = *res_tol;
      if (res_rel_tol) tol = *res_rel_tol * spectrum.width();
      run.json_output(res_out, nores::pipeline::resonance_summary(spectrum, res_q, tol, res_eps));
      if (!res_pairs.empty()) {
        run.json_output(res_pairs, nores::io::to_json(nores::resonance::find_violations(spectrum, res_q, tol)));
      }
    } else if (*eq_cmd) {
      eq_params.spectrum = load_levels(run, eq_in);
      if (eq_state != "random") {
        run.input(eq_state);
        eq_params.state = nores::io::state_from_json(nores::io::read_json(eq_state));
      }
      if (eq_obs != "random") {
        run.input(eq_obs);
        eq_params.observable = nores::io::matrix_from_json(nores::io::read_json(eq_obs));
      }
      if (eq_tol) eq_params.tolerance = *eq_tol;
      if (eq_rel_tol) eq_params.tolerance = *eq_rel_tol * eq_params.spectrum.width();
      run.seed("equilibration", eq_params.seed);
      run.json_output(eq_out, nores::pipeline::run_equilibration(eq_params));
    } else if (*sff_cmd) {
      sff_params.ensemble = nores::rmt::parse_ensemble(sff_kind);
      sff_params.logarithmic = !sff_linear;
      run.seed("sff", sff_params.seed);
      const auto result = nores::pipeline::run_sff(sff_params);
      run.text_output(sff_out, [&](const std::string& m) {
        return nores::io::curve_csv(result.empirical, result.analytic, m);
      });
      if (!sff_summary.empty()) run.json_output(sff_summary, result.summary);
    } else if (*pipe_cmd) {
      const auto request = pipe_request.request();
      run.seed("root", request.seed);
      if (pipe_kind == "qstats") {
        pipe_q.spectrum = request;
        const auto result = nores::pipeline::run_qstats(pipe_q);
        run.json_output(pipe_dir / "summary.json", result.summary);
        run.text_output(pipe_dir / "ratios.csv",
                        [&](const std::string& m) { return nores::io::histogram_csv(result.ratio_histogram, m); });
        if (result.spacing_histogram) {
          run.text_output(pipe_dir / "spacings.csv", [&](const std::string& m) {
            return nores::io::histogram_csv(*result.spacing_histogram, m);
          });
        }
        run.text_output(pipe_dir / "reference.csv",
                        [&](const std::string& m) { return nores::io::reference_curves_csv(nores::pipeline::kSpacingRange, 401, m); });
      } else if (pipe_kind == "equilibration") {
        auto req = request;
        if (req.source != nores::pipeline::Source::kChain) req.N = pipe_d;
        eq_params.spectrum = nores::pipeline::generate_spectrum(req);
        eq_params.q = pipe_q.q;
        eq_params.seed = request.seed;
        run.json_output(pipe_dir / "summary.json", nores::pipeline::run_equilibration(eq_params));
      } else {
        if (request.source == nores::pipeline::Source::kChain) {
          throw nores::ValidationError("cli", "the sff pipeline needs --source goe or gue");
        }
        sff_params.ensemble = request.source == nores::pipeline::Source::kGOE ? nores::rmt::Ensemble::GOE
                                                                               : nores::rmt::Ensemble::GUE;
        sff_params.N = request.N;
        sff_params.seed = request.seed;
        const auto result = nores::pipeline::run_sff(sff_params);
        run.json_output(pipe_dir / "summary.json", result.summary);
        run.text_output(pipe_dir / "sff.csv", [&](const std::string& m) {
          return nores::io::curve_csv(result.empirical, result.analytic, m);
        });
      }
    }
    run.finish();
  } catch (const nores::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
