// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "nores/errors.hpp"

namespace nores::io {
namespace {

constexpr std::string_view kModule = "io";

void expect_kind(const nlohmann::json& doc, std::string_view kind) {
  require(doc.is_object() && doc.contains("kind") && doc["kind"] == kind, kModule,
          "expected a document of kind '" + std::string(kind) + "'");
}

std::vector<double> numbers(const nlohmann::json& arr, std::string_view what) {
  require(arr.is_array(), kModule, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    require(v.is_number(), kModule, std::string(what) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string manifest_line(const std::string& manifest) {
  return manifest.empty() ? std::string() : "# manifest: " + manifest + "\n";
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), kModule, "cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), kModule, "cannot write " + path.string());
  out << text;
  require(static_cast<bool>(out), kModule, "write failed for " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(kModule, path.string() + ": " + e.what());
  }
}

std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

nlohmann::json to_json(const spectral::Spectrum& spectrum) {
  return nlohmann::json{{"kind", "spectrum"}, {"source", spectrum.source}, {"energies", spectrum.energies}};
}

spectral::Spectrum spectrum_from_json(const nlohmann::json& doc) {
  expect_kind(doc, "spectrum");
  require(doc.contains("energies"), kModule, "spectrum has no energies");
  auto energies = numbers(doc["energies"], "energies");
  require(!energies.empty(), kModule, "spectrum is empty");
  return spectral::make_spectrum(std::move(energies), doc.value("source", nlohmann::json::object()));
}

nlohmann::json to_json(const spectral::UnfoldedSpectrum& unfolded) {
  return nlohmann::json{{"kind", "unfolded"},
                        {"source", unfolded.source},
                        {"alpha", unfolded.config.alpha},
                        {"broadening_factor", unfolded.config.broadening_factor},
                        {"epsilons", unfolded.epsilons}};
}

spectral::Spectrum levels_from_json(const nlohmann::json& doc) {
  if (doc.is_object() && doc.value("kind", "") == "unfolded") {
    auto eps = numbers(doc.at("epsilons"), "epsilons");
    require(!eps.empty(), kModule, "unfolded spectrum is empty");
    return spectral::make_spectrum(std::move(eps), doc.value("source", nlohmann::json::object()));
  }
  if (doc.is_object() && doc.value("kind", "") == "qsum") {
    auto sums = numbers(doc.at("sums"), "sums");
    require(!sums.empty(), kModule, "q-sum spectrum is empty");
    return spectral::make_spectrum(std::move(sums), doc.value("base", nlohmann::json::object()));
  }
  return spectrum_from_json(doc);
}

nlohmann::json to_json(const qsum::QSumSpectrum& spectrum) {
  return nlohmann::json{{"kind", "qsum"}, {"q", spectrum.q}, {"base", spectrum.base}, {"count", spectrum.count()},
                        {"sums", spectrum.sums}};
}

nlohmann::json to_json(const resonance::ViolationSet& violations) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : violations.pairs) {
    pairs.push_back({{"first", p.first}, {"second", p.second}, {"gap", p.gap}});
  }
  return nlohmann::json{{"kind", "violations"},
                        {"q", violations.q},
                        {"tolerance", violations.tolerance},
                        {"count", violations.size()},
                        {"pairs", pairs}};
}

Eigen::VectorXcd state_from_json(const nlohmann::json& doc) {
  std::vector<double> re;
  std::vector<double> im;
  if (doc.is_array()) {
    re = numbers(doc, "state");
    im.assign(re.size(), 0.0);
  } else {
    require(doc.is_object() && doc.contains("re"), kModule, "state needs a 're' array");
    re = numbers(doc["re"], "state.re");
    im = doc.contains("im") ? numbers(doc["im"], "state.im") : std::vector<double>(re.size(), 0.0);
  }
  require(!re.empty() && re.size() == im.size(), kModule, "state re/im sizes differ or are empty");
  Eigen::VectorXcd c(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) c(static_cast<Eigen::Index>(i)) = {re[i], im[i]};
  return c;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& doc) {
  auto rows_of = [](const nlohmann::json& m, std::string_view what) {
    require(m.is_array() && !m.empty(), kModule, std::string(what) + " must be a non-empty nested array");
    std::vector<std::vector<double>> rows;
    for (const auto& r : m) rows.push_back(numbers(r, what));
    for (const auto& r : rows) require(r.size() == rows.size(), kModule, std::string(what) + " must be square");
    return rows;
  };
  const bool split = doc.is_object();
  const auto re = rows_of(split ? doc.at("re") : doc, "matrix.re");
  const auto im = split && doc.contains("im") ? rows_of(doc["im"], "matrix.im") : std::vector<std::vector<double>>{};
  require(im.empty() || im.size() == re.size(), kModule, "matrix re/im sizes differ");
  const auto n = static_cast<Eigen::Index>(re.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      m(i, j) = {re[ui][uj], im.empty() ? 0.0 : im[ui][uj]};
    }
  }
  return m;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string histogram_csv(const stats::Histogram& histogram, const std::string& manifest) {
  std::ostringstream out;
  out << manifest_line(manifest) << "bin_left,bin_right,density,count\n";
  for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
    out << format_double(histogram.edges[b]) << ',' << format_double(histogram.edges[b + 1]) << ','
        << format_double(histogram.density[b]) << ',' << histogram.counts[b] << '\n';
  }
  return out.str();
}

std::string curve_csv(const formfactor::FormFactorCurve& empirical, const formfactor::FormFactorCurve& analytic,
                      const std::string& manifest) {
  require(empirical.times == analytic.times, kModule, "curves are on different grids");
  std::ostringstream out;
  out << manifest_line(manifest) << "t,K,stderr,disconnected,analytic\n";
  for (std::size_t i = 0; i < empirical.times.size(); ++i) {
    out << format_double(empirical.times[i]) << ',' << format_double(empirical.values[i]) << ','
        << format_double(empirical.standard_errors[i]) << ',' << format_double(empirical.disconnected[i]) << ','
        << format_double(analytic.values[i]) << '\n';
  }
  return out.str();
}

std::string reference_curves_csv(double smax, std::size_t points, const std::string& manifest) {
  require(smax > 0.0 && points >= 2, kModule, "reference grid needs smax > 0 and >= 2 points");
  std::ostringstream out;
  out << manifest_line(manifest)
      << "s,wigner,wigner_cdf,poisson_spacing,poisson_spacing_cdf,r,goe_ratio,goe_ratio_cdf,poisson_ratio,"
         "poisson_ratio_cdf\n";
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(points - 1);
    const double s = smax * f;
    out << format_double(s) << ',' << format_double(stats::wigner_surmise(s)) << ','
        << format_double(stats::wigner_cdf(s)) << ',' << format_double(stats::poisson_spacing(s)) << ','
        << format_double(stats::poisson_spacing_cdf(s)) << ',' << format_double(f) << ','
        << format_double(stats::goe_ratio_density(f))
        << ',' << format_double(stats::goe_ratio_cdf(f)) << ',' << format_double(stats::poisson_ratio_density(f))
        << ',' << format_double(stats::poisson_ratio_cdf(f)) << '\n';
  }
  return out.str();
}

}  // namespace nores::io
