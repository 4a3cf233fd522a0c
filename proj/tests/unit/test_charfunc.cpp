#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "twomode/charfunc.hpp"
#include "twomode/errors.hpp"
#include "twomode/oracle.hpp"

using namespace twomode;

TEST_CASE("bar parameters") {
  const cplx eta(0.3, -0.8), zeta(-1.1, 0.4);
  const auto [e0, z0] = bar_parameters(eta, zeta, evolution_coeffs(0.0, 0.3, 1.0));
  CHECK(e0 == eta);
  CHECK(z0 == zeta);

  // Full swap on resonance at tau = pi/2 with phi = pi/2.
  const auto [es, zs] = bar_parameters(eta, zeta, evolution_coeffs(kPi / 2.0, 0.0, kPi / 2.0));
  CHECK(std::abs(es + zeta) < 1e-15);
  CHECK(std::abs(zs - eta) < 1e-15);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const cplx e = test_support::random_cplx(rng, 3.0);
    const cplx z = test_support::random_cplx(rng, 3.0);
    const auto [eb, zb] = bar_parameters(e, z, evolution_coeffs(20.0 * u(rng), 0.99 * u(rng), 4.0 * u(rng)));
    const double lhs = std::norm(eb) + std::norm(zb);
    const double rhs = std::norm(e) + std::norm(z);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
  }
}

TEST_CASE("closed-form characteristic function") {
  const Scenario s = Scenario::resonant(cplx(1.2, -0.3), 2.0, cplx(0.7, 0.3), 0.4);
  CHECK(std::abs(chi_N_closed(s, 0.8, 0.0, 0.0) - 1.0) < 1e-14);

  // tau = 0 with beta = 0 reduces to the single-mode cat function.
  const Scenario cat_only = Scenario::resonant(cplx(0.9, 0.5), 0.0, 0.0);
  for (const cplx eta : char_grid()) {
    CHECK(std::abs(chi_N_closed(cat_only, 0.0, eta, 0.0) - cat_char(cat_only.cat, eta)) < 1e-13);
  }

  // Factorized form, conjugate symmetry.
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const cplx e = test_support::random_cplx(rng, 1.5);
    const cplx z = test_support::random_cplx(rng, 1.5);
    const double tau = 0.05 * i;
    const cplx c = chi_N_closed(s, tau, e, z);
    CHECK(std::abs(c - chi_N_factorized(s, tau, e, z)) <= 1e-10 * std::max(1.0, std::abs(c)));
    CHECK(std::abs(chi_N_closed(s, tau, -e, -z) - std::conj(c)) <= 1e-12 * std::max(1.0, std::abs(c)));
    CHECK(std::abs(chi_S_closed(s, tau, e, z) - c * std::exp(-0.5 * (std::norm(e) + std::norm(z)))) < 1e-14);
  }

  const CharPoint p = char_point(s, 0.7, cplx(0.2, 0.1), cplx(-0.3, 0.5));
  CHECK(std::abs(std::norm(p.eta_bar) + std::norm(p.zeta_bar) - std::norm(p.eta) - std::norm(p.zeta)) < 1e-12);
  CHECK(p.chi_value == chi_N_closed(s, 0.7, p.eta, p.zeta));
}

TEST_CASE("direct trace: known states") {
  const TwoModeKet vac = tensor_product(FockKet::basis(0, 8), FockKet::basis(0, 8));
  CHECK(std::abs(chi_N_numeric(vac, 0.0, 0.0) - 1.0) < 1e-15);
  for (const cplx e : char_grid()) CHECK(std::abs(chi_N_numeric(vac, e, -e) - 1.0) < 1e-14);

  const cplx a(0.6, -0.2), b(-0.3, 0.5);
  const TwoModeKet coh = tensor_product(coherent_ket(a, 30), coherent_ket(b, 30));
  const DensityMatrix rho = projector(coh);
  for (const cplx e : {cplx(0.5, 0.5), cplx(-1.5, 1.0)}) {
    const cplx z(0.4, -1.2);
    const cplx want = coherent_char(a, e) * coherent_char(b, z);
    CHECK(std::abs(chi_N_numeric(coh, e, z) - want) < 1e-11);
    CHECK(std::abs(chi_N_numeric(rho, e, z) - want) < 1e-11);
  }
  CHECK(std::abs(chi_N_numeric(rho, 0.0, 0.0) - 1.0) < 1e-14);
}

TEST_CASE("direct trace: guards") {
  const TwoModeKet coh = tensor_product(coherent_ket(1.0, 30), coherent_ket(0.5, 30));
  CHECK_THROWS_AS(chi_N_numeric(coh, 3.5, 0.0), TruncationTooSmall);
  CHECK_THROWS_AS(chi_N_numeric(coh, 0.0, cplx(0.0, -3.1)), TruncationTooSmall);
  const TwoModeKet tight = tensor_product(coherent_ket(2.0, 10), coherent_ket(0.5, 30));
  CHECK_THROWS_AS(chi_N_numeric(tight, 0.1, 0.1), TruncationTooSmall);
  CHECK_THROWS_AS(chi_N_numeric(projector(coherent_ket(1.0, 10)), 0.1, 0.1), DimensionMismatch);
}

TEST_CASE("closed form matches the trace over the evolved oracle state") {
  const Scenario s = Scenario::resonant(cplx(1.2, -0.3), 2.0, cplx(0.7, 0.3), 0.4);
  const int n = char_truncation(s);
  const PropagatorBundle bundle = rwc_hamiltonian(s.coupling.phi, n, n);
  const TwoModeKet start = initial_state(s, n);
  const auto grid = char_grid(1.5, 3);
  for (const double tau : {0.0, kPi / 8.0, 1.3}) {
    const TwoModeKet psi = evolve(start, bundle, tau);
    for (const cplx e : grid)
      for (const cplx z : grid) CHECK(std::abs(chi_N_closed(s, tau, e, z) - chi_N_numeric(psi, e, z)) < 1e-8);
  }
}

TEST_CASE("lowering exponential and grid") {
  const Eigen::MatrixXcd m = lowering_exponential(cplx(0.5, 0.0), 3);
  CHECK(std::abs(m(0, 1) - 0.5) < 1e-15);
  CHECK(std::abs(m(1, 3) - 0.25 / 2.0 * std::sqrt(6.0)) < 1e-15);
  CHECK(m(2, 1) == cplx(0.0, 0.0));
  const auto g = char_grid(1.5, 5);
  CHECK(g.size() == 25);
  CHECK(g.front() == cplx(-1.5, -1.5));
  CHECK(g.back() == cplx(1.5, 1.5));
  CHECK_THROWS_AS(char_grid(1.0, 1), PreconditionError);
}
