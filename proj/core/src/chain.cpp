// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "nores/errors.hpp"

namespace nores::chain {
namespace {

constexpr std::string_view kModule = "chain";

using Complex = std::complex<double>;

State mask(int L) { return L >= 32 ? ~State{0} : (State{1} << L) - 1; }

struct GroupElement {
  int shift = 0;
  bool reflected = false;
  bool flipped = false;
  Complex character{1.0, 0.0};

  State apply(State s, int L) const {
    if (reflected) s = reflect(s, L);
    s = translate(s, L, shift);
    if (flipped) s = flip(s, L);
    return s;
  }
};

std::vector<GroupElement> symmetry_group(const ChainSpec& spec) {
  const int L = spec.L;
  std::vector<int> shifts{0};
  std::vector<Complex> momentum_phase{Complex{1.0, 0.0}};
  if (spec.sector.k) {
    shifts.clear();
    momentum_phase.clear();
    for (int r = 0; r < L; ++r) {
      const double angle = 2.0 * std::numbers::pi * (*spec.sector.k) * r / L;
      shifts.push_back(r);
      // Keep the k in {0, L/2} phases exactly real.
      if ((*spec.sector.k * r) % L == 0) {
        momentum_phase.emplace_back(1.0, 0.0);
      } else if (2 * ((*spec.sector.k * r) % L) == L) {
        momentum_phase.emplace_back(-1.0, 0.0);
      } else {
        momentum_phase.emplace_back(std::cos(angle), std::sin(angle));
      }
    }
  }

  std::vector<GroupElement> group;
  for (int a = 0; a <= (spec.sector.parity != 0 ? 1 : 0); ++a) {
    for (int b = 0; b <= (spec.sector.spin_flip != 0 ? 1 : 0); ++b) {
      for (std::size_t i = 0; i < shifts.size(); ++i) {
        Complex chi = momentum_phase[i];
        if (a) chi *= static_cast<double>(spec.sector.parity);
        if (b) chi *= static_cast<double>(spec.sector.spin_flip);
        group.push_back(GroupElement{shifts[i], a == 1, b == 1, chi});
      }
    }
  }
  return group;
}

struct OrbitImage {
  State representative;
  Complex character;  // chi(g) for some g with g(s) = representative
};

OrbitImage find_representative(State s, int L, const std::vector<GroupElement>& group) {
  OrbitImage best{s, Complex{1.0, 0.0}};
  for (const auto& g : group) {
    const State image = g.apply(s, L);
    if (image < best.representative) best = OrbitImage{image, g.character};
  }
  return best;
}

struct Bond {
  int i;
  int j;
  double hopping;
  double ising;
};

std::vector<Bond> bonds(const ChainSpec& spec) {
  std::vector<Bond> out;
  const auto& c = spec.couplings;
  for (int j = 0; j < spec.L; ++j) {
    out.push_back(Bond{j, (j + 1) % spec.L, c.J1, c.g1});
    if (c.J2 != 0.0 || c.g2 != 0.0) out.push_back(Bond{j, (j + 2) % spec.L, c.J2, c.g2});
  }
  return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> assemble(const ChainSpec& spec, const SectorBasis& basis) {
  validate(spec);
  require(basis.L == spec.L, kModule, "basis was built for a different L");
  const auto group = symmetry_group(spec);
  const auto bond_list = bonds(spec);
  const auto dim = static_cast<Eigen::Index>(basis.dimension());

  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> h =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);

  for (Eigen::Index col = 0; col < dim; ++col) {
    const State r = basis.representatives[static_cast<std::size_t>(col)];
    const double norm_r = basis.norms[static_cast<std::size_t>(col)];
    h(col, col) += ising_energy(r, spec.L, spec.couplings);
    for (const Bond& bond : bond_list) {
      if (bond.hopping == 0.0) continue;
      const bool up_i = (r >> bond.i) & 1U;
      const bool up_j = (r >> bond.j) & 1U;
      if (up_i == up_j) continue;
      const State image = r ^ ((State{1} << bond.i) | (State{1} << bond.j));
      const OrbitImage target = find_representative(image, spec.L, group);
      const auto row = basis.index_of(target.representative);
      if (!row) continue;  // projects to zero in this sector
      const double norm_s = basis.norms[*row];
      h(static_cast<Eigen::Index>(*row), col) +=
          bond.hopping * std::conj(target.character) * std::sqrt(norm_s / norm_r);
    }
  }

  // The assembled matrix is Hermitian up to rounding in the norm ratios;
  // averaging with the adjoint makes that exact.
  h = (0.5 * (h + h.adjoint())).eval();

  if constexpr (std::is_same_v<Scalar, double>) {
    Eigen::MatrixXd real = h.real();
    return real;
  } else {
    return h;
  }
}

}  // namespace

void validate(const ChainSpec& spec) {
  const int L = spec.L;
  require(L >= 4 && L % 2 == 0, kModule, "L must be even and >= 4 (got " + std::to_string(L) + ")");
  require(L <= kMaxSites, kModule, "L must be <= " + std::to_string(kMaxSites));
  if (L < 6) {
    require(spec.couplings.J2 == 0.0 && spec.couplings.g2 == 0.0, kModule,
            "L < 6 double counts range-2 bonds; set J2 = g2 = 0 or use L >= 6");
  }
  const auto& s = spec.sector;
  require(2 * std::abs(s.mz) <= L, kModule, "|mz| must be <= L/2");
  if (s.k) require(*s.k >= 0 && *s.k < L, kModule, "k must lie in [0, L)");
  require(s.parity == 0 || s.parity == 1 || s.parity == -1, kModule, "parity must be 0, +1 or -1");
  require(s.spin_flip == 0 || s.spin_flip == 1 || s.spin_flip == -1, kModule,
          "spin_flip must be 0, +1 or -1");
  if (s.parity != 0) {
    require(s.k.has_value() && (*s.k == 0 || 2 * *s.k == L), kModule,
            "reflection parity requires momentum k = 0 or k = L/2");
  }
  if (s.spin_flip != 0) require(s.mz == 0, kModule, "spin inversion requires mz = 0");
}

ChainSpec maximally_resolved(int L, Couplings couplings) {
  return ChainSpec{L, couplings, Sector{0, 0, 1, 1}};
}

bool has_real_representation(const ChainSpec& spec) {
  return !spec.sector.k || *spec.sector.k == 0 || 2 * *spec.sector.k == spec.L;
}

State translate(State s, int L, int shift) {
  shift = ((shift % L) + L) % L;
  if (shift == 0) return s;
  return ((s << shift) | (s >> (L - shift))) & mask(L);
}

State reflect(State s, int L) {
  State out = 0;
  for (int j = 0; j < L; ++j) {
    if ((s >> j) & 1U) out |= State{1} << (L - 1 - j);
  }
  return out;
}

State flip(State s, int L) { return ~s & mask(L); }

std::optional<std::size_t> SectorBasis::index_of(State rep) const {
  const auto it = std::lower_bound(representatives.begin(), representatives.end(), rep);
  if (it == representatives.end() || *it != rep) return std::nullopt;
  return static_cast<std::size_t>(it - representatives.begin());
}

SectorBasis enumerate_sector_basis(const ChainSpec& spec) {
  validate(spec);
  const int L = spec.L;
  const int ups = L / 2 + spec.sector.mz;
  const auto group = symmetry_group(spec);

  SectorBasis basis;
  basis.L = L;
  const std::uint64_t end = std::uint64_t{1} << L;
  for (std::uint64_t raw = 0; raw < end; ++raw) {
    const auto s = static_cast<State>(raw);
    if (std::popcount(s) != ups) continue;
    bool is_min = true;
    Complex stabilizer_sum{0.0, 0.0};
    for (const auto& g : group) {
      const State image = g.apply(s, L);
      if (image < s) {
        is_min = false;
        break;
      }
      if (image == s) stabilizer_sum += std::conj(g.character);
    }
    if (!is_min) continue;
    // The stabilizer sum is either |Stab| or 0 for a one-dimensional character.
    if (stabilizer_sum.real() < 0.5) continue;
    basis.representatives.push_back(s);
    basis.norms.push_back(std::round(stabilizer_sum.real()));
  }
  return basis;
}

Eigen::MatrixXd build_hamiltonian(const ChainSpec& spec, const SectorBasis& basis) {
  require(has_real_representation(spec), kModule,
          "momentum k=" + std::to_string(spec.sector.k.value_or(-1)) +
              " has complex characters; use build_hamiltonian_complex");
  return assemble<double>(spec, basis);
}

Eigen::MatrixXcd build_hamiltonian_complex(const ChainSpec& spec, const SectorBasis& basis) {
  return assemble<Complex>(spec, basis);
}

double ising_energy(State s, int L, const Couplings& couplings) {
  double energy = 0.0;
  for (int j = 0; j < L; ++j) {
    const bool a = (s >> j) & 1U;
    const bool b1 = (s >> ((j + 1) % L)) & 1U;
    const bool b2 = (s >> ((j + 2) % L)) & 1U;
    energy += couplings.g1 * (a == b1 ? 0.25 : -0.25);
    if (couplings.g2 != 0.0) energy += couplings.g2 * (a == b2 ? 0.25 : -0.25);
  }
  return energy;
}

std::vector<ChainSpec> momentum_sectors(int L, Couplings couplings) {
  std::vector<ChainSpec> out;
  for (int mz = -L / 2; mz <= L / 2; ++mz) {
    for (int k = 0; k < L; ++k) out.push_back(ChainSpec{L, couplings, Sector{mz, k, 0, 0}});
  }
  return out;
}

}  // namespace nores::chain
