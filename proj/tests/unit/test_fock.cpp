#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "twomode/errors.hpp"
#include "twomode/fock.hpp"

using namespace twomode;

TEST_CASE("coherent_ket expansion") {
  const FockKet vac = coherent_ket(0.0, 8);
  CHECK(vac[0] == cplx(1.0, 0.0));
  for (int n = 1; n <= 8; ++n) CHECK(vac[n] == cplx(0.0, 0.0));

  const FockKet one = coherent_ket(1.0, 16);
  CHECK(one[0].real() == doctest::Approx(0.606530659712633).epsilon(1e-14));
  CHECK(one[1].real() == doctest::Approx(0.606530659712633).epsilon(1e-14));
  CHECK(one[4].real() == doctest::Approx(std::exp(-0.5) / std::sqrt(24.0)).epsilon(1e-14));

  const std::vector<StateSpec> specs{CoherentSpec{std::sqrt(5.0)}};
  const int n = choose_truncation(specs, 1e-12);
  const FockKet big = coherent_ket(std::sqrt(5.0), n);
  CHECK(big.squared_norm() >= 1.0 - 1e-12);
  CHECK(big.squared_norm() <= 1.0 + 1e-14);
  CHECK(big.tail_mass() < 1e-12);
}

TEST_CASE("coherent_ket warns when the tail exceeds epsilon") {
  Warnings w;
  coherent_ket(3.0, 5, 1e-12, &w);
  CHECK_FALSE(w.empty());
  Warnings quiet;
  coherent_ket(0.5, 30, 1e-12, &quiet);
  CHECK(quiet.empty());
}

TEST_CASE("cat_ket parity, normalization and degenerate inputs") {
  const CatSpec odd{1.0, kPi};
  const FockKet o = cat_ket(odd, 16);
  for (int n = 0; n <= 16; n += 2) CHECK(o[n] == cplx(0.0, 0.0));

  const CatSpec even{1.0, 0.0};
  CHECK(even.normalization() == doctest::Approx(1.50687443620005).epsilon(1e-13));
  const FockKet e = cat_ket(even, 16);
  for (int n = 1; n <= 16; n += 2) CHECK(e[n] == cplx(0.0, 0.0));
  CHECK(e.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));

  const FockKet vac = cat_ket(CatSpec{0.0, 0.0}, 4);
  CHECK(std::abs(vac[0] - 1.0) < 1e-15);
  for (int n = 1; n <= 4; ++n) CHECK(vac[n] == cplx(0.0, 0.0));

  CHECK_THROWS_AS(cat_ket(CatSpec{0.0, kPi}, 4), NullState);
  CHECK_THROWS_AS(CatSpec({0.0, -kPi}).validate(), NullState);
}

TEST_CASE("tensor product") {
  const TwoModeKet vac = tensor_product(FockKet::basis(0, 3), FockKet::basis(0, 2));
  CHECK(vac(0, 0) == cplx(1.0, 0.0));
  CHECK(vac.dim_a() == 4);
  CHECK(vac.dim_b() == 3);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = test_support::random_vector(rng, 6);
    auto b = test_support::random_vector(rng, 9);
    const FockKet ka(a), kb(b);
    const TwoModeKet ab = tensor_product(ka, kb);
    CHECK(ab.squared_norm() == doctest::Approx(ka.squared_norm() * kb.squared_norm()).epsilon(1e-14));
    CHECK(ab(2, 5) == a[2] * b[5]);
  }
}

TEST_CASE("partial trace") {
  const CatSpec cat{cplx(0.8, 0.3), 0.7};
  const TwoModeKet prod = tensor_product(cat_ket(cat, 20), coherent_ket(cplx(-0.4, 0.9), 20));
  const DensityMatrix ra = partial_trace(prod, Mode::A);
  const DensityMatrix want = projector(cat_ket(cat, 20));
  CHECK((ra.entries() - want.entries() * prod.squared_norm() / cat_ket(cat, 20).squared_norm())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK(purity_and_linear_entropy(ra).purity == doctest::Approx(1.0).epsilon(1e-12));

  TwoModeKet bell(1, 1);
  bell(0, 0) = 1.0 / std::sqrt(2.0);
  bell(1, 1) = 1.0 / std::sqrt(2.0);
  for (const Mode m : {Mode::A, Mode::B}) {
    const DensityMatrix r = partial_trace(bell, m);
    CHECK(std::abs(r.entries()(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(r.entries()(1, 1) - 0.5) < 1e-15);
    CHECK(std::abs(r.entries()(0, 1)) < 1e-15);
    const PurityEntropy pe = purity_and_linear_entropy(r);
    CHECK(pe.purity == doctest::Approx(0.5));
    CHECK(pe.entropy == doctest::Approx(0.5));
  }
}

TEST_CASE("partial trace of kets and density matrices agree, traces preserved") {
  std::mt19937_64 rng(3);
  const auto amps = test_support::random_vector(rng, 5 * 7);
  const TwoModeKet psi(4, 6, amps);
  const DensityMatrix full = projector(psi);
  for (const Mode m : {Mode::A, Mode::B}) {
    const DensityMatrix r1 = partial_trace(psi, m);
    const DensityMatrix r2 = partial_trace(full, m);
    CHECK((r1.entries() - r2.entries()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(r1.trace() - psi.squared_norm()) < 1e-12);
    CHECK(r1.hermiticity_error() < 1e-14);
    CHECK(r1.min_eigenvalue() > -1e-10);
  }
  CHECK_THROWS_AS(partial_trace(projector(FockKet::basis(0, 2)), Mode::A), PreconditionError);
}

TEST_CASE("entropy symmetry and purity bounds for random pure states") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const auto amps = test_support::random_vector(rng, 6 * 4);
    const TwoModeKet psi(5, 3, amps);
    const PurityEntropy a = purity_and_linear_entropy(partial_trace(psi, Mode::A));
    const PurityEntropy b = purity_and_linear_entropy(partial_trace(psi, Mode::B));
    CHECK(std::abs(a.entropy - b.entropy) < 1e-10);
    CHECK(b.purity >= 1.0 / 4.0 - 1e-12);
    CHECK(a.purity <= 1.0 + 1e-12);
    CHECK(a.entropy >= -1e-12);
  }
}

TEST_CASE("number statistics") {
  const cplx beta(1.1, -0.7);
  const NumberStats coh = number_statistics(coherent_ket(beta, 40));
  CHECK(coh.mean == doctest::Approx(std::norm(beta)).epsilon(1e-12));
  CHECK(coh.variance == doctest::Approx(std::norm(beta)).epsilon(1e-11));

  const NumberStats fock3 = number_statistics(FockKet::basis(3, 6));
  CHECK(fock3.mean == 3.0);
  CHECK(fock3.variance == 0.0);

  for (const double A : {0.3, 1.0, 5.0}) {
    const NumberStats cat = number_statistics(cat_ket(CatSpec{std::sqrt(A), 0.0}, 60));
    CHECK(cat.mean == doctest::Approx(A * std::tanh(A)).epsilon(1e-12));
    CHECK(cat.variance >= -1e-12);
  }

  const TwoModeKet two = tensor_product(cat_ket(CatSpec{1.0, 0.0}, 30), coherent_ket(beta, 30));
  CHECK(number_statistics(two, Mode::A).mean == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
  CHECK(number_statistics(two, Mode::B).mean == doctest::Approx(std::norm(beta)).epsilon(1e-12));
  const DensityMatrix rho = projector(two);
  CHECK(number_statistics(rho, Mode::B).variance == doctest::Approx(std::norm(beta)).epsilon(1e-10));
  CHECK(number_statistics(partial_trace(rho, Mode::A)).mean ==
        doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
}

TEST_CASE("overlaps") {
  std::mt19937_64 rng(5);
  const auto amps = test_support::random_vector(rng, 16);
  TwoModeKet psi(3, 3, amps);
  const double norm = std::sqrt(psi.squared_norm());
  for (auto& a : psi.amps()) a /= norm;
  CHECK(std::abs(overlap(psi, psi) - 1.0) < 1e-14);

  const TwoModeKet e00 = tensor_product(FockKet::basis(0, 2), FockKet::basis(0, 2));
  const TwoModeKet e10 = tensor_product(FockKet::basis(1, 2), FockKet::basis(0, 2));
  CHECK(overlap(e00, e10) == cplx(0.0, 0.0));

  const auto other = test_support::random_vector(rng, 16);
  const TwoModeKet phi(3, 3, other);
  CHECK(overlap(psi, phi) == std::conj(overlap(phi, psi)));

  // Different truncations are compared on the common block.
  const TwoModeKet small = tensor_product(FockKet::basis(1, 1), FockKet::basis(0, 1));
  CHECK(overlap(small, e10) == cplx(1.0, 0.0));

  const CatSpec cat{std::sqrt(5.0), 0.0};
  const int n = 40;
  const TwoModeKet x = tensor_product(cat_ket(cat, n), coherent_ket(0.0, n));
  const TwoModeKet y = tensor_product(coherent_ket(0.0, n), cat_ket(cat, n));
  CHECK(std::norm(overlap(x, y)) == doctest::Approx(1.81583230943807e-4).epsilon(1e-12));
}

TEST_CASE("choose_truncation") {
  const std::vector<StateSpec> vac{CoherentSpec{0.0}};
  CHECK(choose_truncation(vac) == 0);

  const std::vector<StateSpec> one{CoherentSpec{1.0}};
  const int n1 = choose_truncation(one, 1e-12);
  CHECK(n1 <= 20);
  CHECK(fock_tail_mass(one[0], n1) < 1e-12);
  CHECK(fock_tail_mass(one[0], n1 - 1) >= 1e-12);

  const std::vector<StateSpec> five{CoherentSpec{std::sqrt(5.0)}, CatSpec{std::sqrt(5.0), kPi}};
  int previous = 1 << 30;
  for (const double eps : {1e-16, 1e-14, 1e-12, 1e-9, 1e-6, 1e-3}) {
    const int n = choose_truncation(five, eps);
    for (const auto& s : five) CHECK(fock_tail_mass(s, n) < eps);
    CHECK(n <= previous);
    previous = n;
  }
  const std::vector<StateSpec> huge{CoherentSpec{20.0}};
  CHECK_THROWS_AS(choose_truncation(huge, 1e-12, 256), TruncationTooLarge);
}

TEST_CASE("angles") {
  CHECK(angle_equals(2.0 * kPi, 0.0));
  CHECK(angle_equals(-kPi, kPi));
  CHECK_FALSE(angle_equals(0.1, 0.0));
  CHECK(unit_phase(kPi / 2.0) == cplx(0.0, 1.0));
  CHECK(unit_phase(-kPi) == cplx(-1.0, 0.0));
  CHECK(std::abs(unit_phase(0.3) - std::polar(1.0, 0.3)) < 1e-16);
}
