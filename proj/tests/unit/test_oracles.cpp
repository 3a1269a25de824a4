#include "spectro/error.hpp"
#include "spectro/oracles.hpp"
#include "spectro/statevector.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace spectro;

namespace {

// H0 = d/2 Z on one system qubit.
PauliHamiltonian two_level(double d) {
  return PauliHamiltonian(1, {{0.5 * d, PauliString::parse("Z")}});
}

VectorXc basis(int bit) {
  VectorXc v = VectorXc::Zero(2);
  v[bit] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("closed-form amplitudes match exact evolution") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> cd(0.01, 0.5), dd(-3.0, 3.0), td(0.5, 20.0), wd(-4.0, 4.0);
  for (int draw = 0; draw < 10; ++draw) {
    const TwoLevelParams base{dd(rng), cd(rng), td(rng), 0.0};
    for (int k = 0; k < 10; ++k) {
      TwoLevelParams p = base;
      p.omega = wd(rng);
      for (int bit : {0, 1}) {
        const double z0 = exact_resonance_z0(two_level(p.d), p.omega, p.c, p.t, basis(bit));
        CHECK((1.0 - z0) / 2.0 == doctest::Approx(two_level_flip_probability(p, bit)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("amplitude A peaks on resonance") {
  const TwoLevelParams on{1.2, 0.1, 10.0, 1.2};
  CHECK(std::norm(amplitude_A(on)) == doctest::Approx(std::pow(std::sin(1.0), 2)));
  CHECK(amplitude_A(on).real() == 0.0);
  // B is A mirrored in omega.
  const TwoLevelParams mirrored{1.2, 0.1, 10.0, -1.2};
  CHECK(amplitude_B(mirrored) == amplitude_A(on));
  // Vanishing root falls back to the c t limit.
  CHECK(amplitude_A_im(0.5, 0.5, 0.0, 3.0) == 0.0);
  CHECK_THROWS_AS(two_level_flip_probability(on, 2), InvalidArgument);
  CHECK(two_level_z0(on, 0.0, 1.0) == doctest::Approx(1.0 - 2.0 * std::norm(amplitude_A(on))));
}

TEST_CASE("no coupling leaves the probe untouched") {
  const PauliHamiltonian h = landau_zener(0.6, 0.9);
  const Spectrum s = exact_spectrum(h);
  const VectorXc alpha = eigenbasis_amplitudes(s, basis(0));
  for (double w : {-2.0, 0.0, 1.0, 3.0}) {
    CHECK(exact_resonance_z0(h, w, 0.0, 5.0, basis(0)) == doctest::Approx(1.0));
    CHECK(perturbative_z0(s, alpha, 0.0, 5.0, w + 0.123) == doctest::Approx(1.0));
  }
}

TEST_CASE("perturbative formula tracks exact evolution at weak coupling") {
  const PauliHamiltonian h = landau_zener(0.6, 0.9);
  const Spectrum s = exact_spectrum(h);
  const VectorXc alpha = eigenbasis_amplitudes(s, basis(0));
  const double c = 0.02;
  double worst = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double w = -4.0 + 0.04 * k;
    try {
      const double p = perturbative_z0(s, alpha, c, 5.0, w);
      worst = std::max(worst, std::abs(p - exact_resonance_z0(h, w, c, 5.0, basis(0))));
    } catch (const PoleProximity&) {
      const double gap = s.energies[1] - s.energies[0];
      CHECK(std::min(std::abs(std::abs(w) - gap), std::abs(w)) < pole_guard(c));
    }
  }
  CHECK(worst < 25 * c * c * c);
  CHECK_THROWS_AS(perturbative_z0(s, alpha, c, 5.0, s.energies[1] - s.energies[0]), PoleProximity);
  CHECK_THROWS_AS(perturbative_z0(s, VectorXc::Ones(3), c, 5.0, 1.0), InvalidArgument);
}

TEST_CASE("expected resonances from the populated levels") {
  const PauliHamiltonian h = landau_zener(0.6, 0.9);
  const Spectrum s = exact_spectrum(h);
  const double gap = 2.0 * std::hypot(0.6, 0.9);
  const auto both = expected_resonances(s, eigenbasis_amplitudes(s, basis(0)));
  REQUIRE(both.size() == 2);
  CHECK(both[0] == doctest::Approx(-gap));
  CHECK(both[1] == doctest::Approx(gap));

  // From the ground state only the flip into the upper level is driven,
  // resonant at E_0 - E_1 < 0.
  VectorXc ground = VectorXc::Zero(2);
  ground[0] = 1.0;
  const auto up = expected_resonances(s, ground);
  REQUIRE(up.size() == 1);
  CHECK(up[0] == doctest::Approx(-gap));
  CHECK(initial_support(ground) == std::vector<std::size_t>{0});
}

TEST_CASE("zero dip predicate") {
  const PauliHamiltonian lz = landau_zener(0.6, 0.9);
  const Spectrum exact = exact_spectrum(lz);
  const std::vector<std::size_t> both{0, 1};
  // a Z + b Y has <n|X|n> = 0 for both eigenstates.
  CHECK_FALSE(zero_dip_expected(exact, 1, both));
  // A first-order Trotter step picks up an effective X term.
  CHECK(zero_dip_expected(trotter_step_spectrum(lz, 1.0 / 3.0, 1), 1, both));
  // Parity-conserving chains never have a diagonal X element.
  const PauliHamiltonian chain = kitaev_chain(KitaevParams::from_pauli(2, 0.1, 1.5, 1.0, 0.4));
  CHECK_FALSE(zero_dip_expected(exact_spectrum(chain), 1, {0, 1, 2, 3}));
  CHECK_FALSE(zero_dip_expected(trotter_step_spectrum(chain, 0.7, 2), 1, {0, 1, 2, 3}));
  // A field with an X component does.
  const PauliHamiltonian tilted(1, {{1.0, PauliString::parse("X")}, {0.5, PauliString::parse("Z")}});
  CHECK(zero_dip_expected(exact_spectrum(tilted), 1, {0}));
}
