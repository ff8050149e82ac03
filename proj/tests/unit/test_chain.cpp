// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include "nores/chain.hpp"
#include "nores/errors.hpp"
#include "nores/spectral.hpp"
#include "oracles.hpp"

using namespace nores;
using Catch::Matchers::WithinAbs;

namespace {

chain::ChainSpec spec_of(int L, chain::Sector sector, chain::Couplings c = {}) { return {L, c, sector}; }

std::vector<double> sector_spectrum(const chain::ChainSpec& spec) {
  const auto basis = chain::enumerate_sector_basis(spec);
  if (basis.dimension() == 0) return {};
  if (chain::has_real_representation(spec)) {
    return spectral::eigenvalues(chain::build_hamiltonian(spec, basis)).energies;
  }
  return spectral::eigenvalues(chain::build_hamiltonian_complex(spec, basis)).energies;
}

const chain::Couplings kNearestOnly{-1.0, 1.0, 0.0, 0.0};

}  // namespace

TEST_CASE("bit operations on a ring") {
  CHECK(chain::translate(0b0001, 4, 1) == 0b0010);
  CHECK(chain::translate(0b1000, 4, 1) == 0b0001);
  CHECK(chain::translate(0b0011, 4, 3) == 0b1001);
  CHECK(chain::reflect(0b0001, 4) == 0b1000);
  CHECK(chain::reflect(0b0110, 4) == 0b0110);
  CHECK(chain::flip(0b0101, 4) == 0b1010);
  for (chain::State s = 0; s < 64; ++s) {
    CHECK(chain::translate(s, 6, 6) == s);
    CHECK(chain::reflect(chain::reflect(s, 6), 6) == s);
  }
}

TEST_CASE("sector validation") {
  CHECK_THROWS_AS(chain::validate(spec_of(2, {}, kNearestOnly)), ValidationError);
  CHECK_THROWS_AS(chain::validate(spec_of(7, {})), ValidationError);
  CHECK_THROWS_AS(chain::validate(spec_of(32, {})), ValidationError);
  CHECK_THROWS_AS(chain::validate(spec_of(4, {})), ValidationError);  // range-2 bonds at L = 4
  CHECK_NOTHROW(chain::validate(spec_of(4, {}, kNearestOnly)));
  CHECK_THROWS_AS(chain::validate(spec_of(8, {5, std::nullopt, 0, 0})), ValidationError);
  CHECK_THROWS_AS(chain::validate(spec_of(8, {0, 8, 0, 0})), ValidationError);
  CHECK_THROWS_AS(chain::validate(spec_of(8, {0, 1, 1, 0})), ValidationError);
  CHECK_THROWS_AS(chain::validate(spec_of(8, {1, 0, 0, 1})), ValidationError);
  CHECK_THROWS_AS(chain::validate(spec_of(8, {0, 0, 2, 0})), ValidationError);
  CHECK_NOTHROW(chain::validate(spec_of(8, {0, 4, -1, 1})));
  CHECK_NOTHROW(chain::validate(chain::maximally_resolved(18)));
}

TEST_CASE("basis dimensions") {
  SECTION("magnetization only") {
    CHECK(chain::enumerate_sector_basis(spec_of(4, {0, std::nullopt, 0, 0}, kNearestOnly)).dimension() == 6);
    CHECK(chain::enumerate_sector_basis(spec_of(10, {1, std::nullopt, 0, 0})).dimension() == 210);
  }
  SECTION("representatives are orbit minima, sorted") {
    const auto b = chain::enumerate_sector_basis(chain::maximally_resolved(10));
    REQUIRE(b.dimension() > 0);
    CHECK(std::is_sorted(b.representatives.begin(), b.representatives.end()));
    for (auto r : b.representatives) {
      for (int shift = 0; shift < 10; ++shift) {
        const auto t = chain::translate(r, 10, shift);
        CHECK(r <= t);
        CHECK(r <= chain::reflect(t, 10));
        CHECK(r <= chain::flip(t, 10));
      }
      CHECK(b.index_of(r).has_value());
    }
  }
  SECTION("momentum sectors partition each magnetization block") {
    for (int L : {8, 10}) {
      std::size_t mz0 = 0;
      std::size_t total = 0;
      for (const auto& spec : chain::momentum_sectors(L)) {
        const auto d = chain::enumerate_sector_basis(spec).dimension();
        total += d;
        if (spec.sector.mz == 0) mz0 += d;
      }
      CHECK(total == (std::size_t{1} << L));
      CHECK(mz0 == (L == 8 ? 70u : 252u));
    }
  }
  SECTION("dimension equals the projector rank") {
    struct Case {
      int L;
      chain::Sector sector;
      chain::Couplings couplings;
    };
    const std::vector<Case> cases = {
        {4, {0, 0, 0, 0}, kNearestOnly},  {4, {0, 2, 0, 0}, kNearestOnly},  {4, {0, 1, 0, 0}, kNearestOnly},
        {4, {0, 0, 1, 1}, kNearestOnly},  {4, {0, 0, -1, 1}, kNearestOnly}, {4, {0, 2, 1, -1}, kNearestOnly},
        {6, {0, 0, 1, 1}, {}},            {6, {0, 3, -1, -1}, {}},          {6, {1, 2, 0, 0}, {}},
        {6, {0, std::nullopt, 0, -1}, {}}, {8, {0, 0, 1, 1}, {}},           {8, {0, 4, 1, -1}, {}},
    };
    for (const auto& c : cases) {
      const auto p = oracle::sector_projector(c.L, c.sector);
      const double rank = p.trace().real();
      CHECK(chain::enumerate_sector_basis(spec_of(c.L, c.sector, c.couplings)).dimension() ==
            static_cast<std::size_t>(std::lround(rank)));
    }
  }
}

TEST_CASE("Ising limit is diagonal") {
  const chain::Couplings ising{0.0, 1.0, 0.0, 0.0};
  const auto spec = spec_of(4, {0, std::nullopt, 0, 0}, ising);
  const auto basis = chain::enumerate_sector_basis(spec);
  const auto h = chain::build_hamiltonian(spec, basis);
  CHECK(h.isDiagonal());
  const auto idx = basis.index_of(0b0101);
  REQUIRE(idx.has_value());
  CHECK(h(static_cast<Eigen::Index>(*idx), static_cast<Eigen::Index>(*idx)) == -1.0);
  CHECK(chain::ising_energy(0b0101, 4, ising) == -1.0);
  CHECK(chain::ising_energy(0b0000, 4, ising) == 1.0);
}

TEST_CASE("sector Hamiltonians are exactly symmetric or Hermitian") {
  for (const auto& spec : chain::momentum_sectors(8)) {
    const auto basis = chain::enumerate_sector_basis(spec);
    if (basis.dimension() == 0) continue;
    if (chain::has_real_representation(spec)) {
      const auto h = chain::build_hamiltonian(spec, basis);
      CHECK(h == h.transpose());
    } else {
      const auto h = chain::build_hamiltonian_complex(spec, basis);
      CHECK(h == h.adjoint());
      CHECK_THROWS_AS(chain::build_hamiltonian(spec, basis), ValidationError);
    }
  }
  const auto spec = chain::maximally_resolved(12);
  const auto h = chain::build_hamiltonian(spec, chain::enumerate_sector_basis(spec));
  CHECK(h == h.transpose());
}

TEST_CASE("symmetries commute with the full Hamiltonian") {
  const int L = 8;
  const auto h = oracle::full_chain_hamiltonian(L, {});
  const auto t = oracle::translation(L);
  const auto p = oracle::reflection(L);
  const auto z = oracle::spin_inversion(L);
  CHECK((h * t - t * h).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((h * p - p * h).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((h * z - z * h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sector spectra match projected full Hamiltonians") {
  for (int L : {6, 8}) {
    const auto h = oracle::full_chain_hamiltonian(L, {});
    for (const chain::Sector& sector :
         {chain::Sector{0, 0, 1, 1}, chain::Sector{0, 0, -1, -1}, chain::Sector{0, L / 2, 1, -1},
          chain::Sector{1, 1, 0, 0}, chain::Sector{0, 2, 0, 0}, chain::Sector{-1, std::nullopt, 0, 0}}) {
      const auto spec = spec_of(L, sector);
      const auto expected = oracle::projected_spectrum(h, oracle::sector_projector(L, sector));
      const auto got = sector_spectrum(spec);
      CHECK(oracle::max_sorted_difference(got, expected) < 1e-10);
    }
  }
}

TEST_CASE("union of momentum sectors reproduces the full spectrum") {
  const int L = 8;
  const auto full = spectral::eigenvalues(oracle::full_chain_hamiltonian(L, {})).energies;
  std::vector<double> joined;
  for (const auto& spec : chain::momentum_sectors(L)) {
    const auto part = sector_spectrum(spec);
    joined.insert(joined.end(), part.begin(), part.end());
  }
  CHECK(oracle::max_sorted_difference(joined, full) < 1e-10);
}

TEST_CASE("full-space eigenvalue sum equals the trace") {
  const auto h = oracle::full_chain_hamiltonian(8, {});
  const auto s = spectral::eigenvalues(h);
  double sum = 0.0;
  for (double e : s.energies) sum += e;
  const double trace = h.trace();
  CHECK(std::abs(sum - trace) <= 1e-9 * std::max(1.0, h.cwiseAbs().sum() / 256.0));
}
