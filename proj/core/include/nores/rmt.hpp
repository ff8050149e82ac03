// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace nores::rmt {

enum class Ensemble { GOE, GUE };

std::string_view to_string(Ensemble kind);
Ensemble parse_ensemble(std::string_view name);

struct EnsembleSpec {
  Ensemble kind = Ensemble::GOE;
  int N = 2;
  std::uint64_t seed = 0;
};

/// Spec of the index-th member of an ensemble run rooted at `root.seed`.
/// Members are independent and may be generated in any order.
EnsembleSpec member(const EnsembleSpec& root, std::uint64_t index);

/// H = A + A^T with A_ij i.i.d. standard normal: off-diagonal variance 2,
/// diagonal variance 4.
Eigen::MatrixXd sample_goe(const EnsembleSpec& spec);

/// H = (B + B^dagger) / sqrt(2) with B_ij i.i.d. standard complex normal
/// (E|B_ij|^2 = 1): unit variance on and off the diagonal.
Eigen::MatrixXcd sample_gue(const EnsembleSpec& spec);

}  // namespace nores::rmt
