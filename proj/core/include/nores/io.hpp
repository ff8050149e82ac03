// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "nores/formfactor.hpp"
#include "nores/qsum.hpp"
#include "nores/resonance.hpp"
#include "nores/spectral.hpp"
#include "nores/stats.hpp"

namespace nores::io {

// JSON documents carry a "kind" tag and, when written by the tool, the file
// name of their manifest. CSV files start with a "# manifest: <name>" line.

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

nlohmann::json read_json(const std::filesystem::path& path);
/// Two-space indent, sorted keys, trailing newline.
std::string dump(const nlohmann::json& doc);

nlohmann::json to_json(const spectral::Spectrum& spectrum);
spectral::Spectrum spectrum_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const spectral::UnfoldedSpectrum& unfolded);
/// Accepts either kind: unfolded epsilons are read as a plain spectrum.
spectral::Spectrum levels_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const qsum::QSumSpectrum& spectrum);
nlohmann::json to_json(const resonance::ViolationSet& violations);

/// {"re": [...], "im": [...]} or a plain real array.
Eigen::VectorXcd state_from_json(const nlohmann::json& doc);
/// {"re": [[...]], "im": [[...]]} row-major, or a plain real nested array.
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& doc);

/// %.17g, which round-trips doubles.
std::string format_double(double x);

/// Columns: bin_left, bin_right, density, count.
std::string histogram_csv(const stats::Histogram& histogram, const std::string& manifest);

/// Columns: t, K, stderr, disconnected, analytic.
std::string curve_csv(const formfactor::FormFactorCurve& empirical, const formfactor::FormFactorCurve& analytic,
                      const std::string& manifest);

/// Reference densities and CDFs on `points` uniform abscissae: s over
/// [0, smax] for spacings and r over [0, 1] for ratios. Columns: s, wigner,
/// wigner_cdf, poisson_spacing, poisson_spacing_cdf, r, goe_ratio,
/// goe_ratio_cdf, poisson_ratio, poisson_ratio_cdf.
std::string reference_curves_csv(double smax, std::size_t points, const std::string& manifest);

}  // namespace nores::io
