// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace nores::chain {

// Spin-1/2 chain on a periodic ring with nearest and next-nearest neighbour
// XXZ-type couplings:
//
//   H = sum_j J1 (S+_j S-_{j+1} + h.c.) + g1 Sz_j Sz_{j+1}
//           + J2 (S+_j S-_{j+2} + h.c.) + g2 Sz_j Sz_{j+2}
//
// Conventions: Sz = +-1/2, <up|S+|down> = 1, bit j of a basis state set means
// site j is up.

using State = std::uint32_t;

inline constexpr int kMaxSites = 30;

struct Couplings {
  double J1 = -1.0;
  double g1 = 1.0;
  double J2 = -0.2;
  double g2 = 0.5;
};

/// Symmetry sector. Unset momentum means translations are not resolved;
/// parity / spin_flip of 0 means that symmetry is not resolved, otherwise
/// they hold the +1 / -1 eigenvalue.
struct Sector {
  int mz = 0;               // total magnetization, sum_j Sz_j
  std::optional<int> k;     // momentum 2 pi k / L, k in [0, L)
  int parity = 0;           // reflection P
  int spin_flip = 0;        // spin inversion Z
};

struct ChainSpec {
  int L = 0;
  Couplings couplings;
  Sector sector;
};

/// Throws ValidationError when the spec is not a well-posed sector:
///  - L even, 4 <= L <= kMaxSites; L == 4 only with J2 == g2 == 0 (the
///    range-2 bonds would otherwise be double counted)
///  - |mz| <= L/2, k in [0, L)
///  - parity needs a resolved momentum with k in {0, L/2}
///  - spin_flip needs mz == 0
void validate(const ChainSpec& spec);

/// The maximally resolved sector used for spectral statistics:
/// mz = 0, k = 0, P = +1, Z = +1.
ChainSpec maximally_resolved(int L, Couplings couplings = {});

/// True when every group character is real (momentum unresolved or
/// k in {0, L/2}), so the sector Hamiltonian is a real symmetric matrix.
bool has_real_representation(const ChainSpec& spec);

// Bit-level symmetry operations.
State translate(State s, int L, int shift);  // site j -> j + shift (mod L)
State reflect(State s, int L);               // site j -> L - 1 - j
State flip(State s, int L);                  // up <-> down

struct SectorBasis {
  int L = 0;
  std::vector<State> representatives;  // ascending; each the minimum of its orbit
  std::vector<double> norms;           // sum of conj(character) over the stabilizer

  std::size_t dimension() const noexcept { return representatives.size(); }
  std::optional<std::size_t> index_of(State rep) const;
};

SectorBasis enumerate_sector_basis(const ChainSpec& spec);

/// Dense real symmetric sector Hamiltonian; requires has_real_representation.
Eigen::MatrixXd build_hamiltonian(const ChainSpec& spec, const SectorBasis& basis);

/// Dense Hermitian sector Hamiltonian for any momentum.
Eigen::MatrixXcd build_hamiltonian_complex(const ChainSpec& spec, const SectorBasis& basis);

/// Diagonal (Ising) energy of a bit configuration.
double ising_energy(State s, int L, const Couplings& couplings);

/// Every (mz, k) sector of a ring of length L; their spectra partition the
/// full 2^L spectrum.
std::vector<ChainSpec> momentum_sectors(int L, Couplings couplings = {});

}  // namespace nores::chain
