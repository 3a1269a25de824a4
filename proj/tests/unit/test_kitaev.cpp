#include "spectro/config.hpp"
#include "spectro/error.hpp"
#include "spectro/kitaev.hpp"
#include "spectro/spectrum.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace spectro;

TEST_CASE("two-site closed form") {
  const auto lv = two_site_spectrum(1.0, 1.5, 0.4, 0.2);
  CHECK(lv.odd_minus == doctest::Approx(-2.1));
  CHECK(lv.odd_plus == doctest::Approx(1.7));
  CHECK(lv.even_minus == doctest::Approx(-2.0825).epsilon(1e-4));
  CHECK(lv.even_plus == doctest::Approx(2.4825).epsilon(1e-4));

  const auto flat = two_site_spectrum(0.0, 0.8, 0.8, 0.3);
  CHECK(flat.even_minus == doctest::Approx(0.3));
  CHECK(flat.even_plus == doctest::Approx(0.3));
}

TEST_CASE("closed form matches dense diagonalisation with parity sectors") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double m = u(rng), x = u(rng), y = u(rng), z = u(rng);
    const auto lv = two_site_spectrum(m, x, y, z);
    const Spectrum s = exact_spectrum(kitaev_chain(KitaevParams::from_pauli(2, m, x, y, z)));
    const auto sorted = lv.sorted();
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(s.energies[i] == doctest::Approx(sorted[i]).epsilon(1e-10));
    double odd_min = 1e9, even_min = 1e9;
    for (std::size_t i = 0; i < 4; ++i) {
      (s.parities[i] < 0 ? odd_min : even_min) =
          std::min(s.parities[i] < 0 ? odd_min : even_min, s.energies[static_cast<Eigen::Index>(i)]);
    }
    CHECK(odd_min == doctest::Approx(std::min(lv.odd_minus, lv.odd_plus)).epsilon(1e-10));
    CHECK(even_min == doctest::Approx(std::min(lv.even_minus, lv.even_plus)).epsilon(1e-10));
  }
}

TEST_CASE("zero crossing surface") {
  CHECK(*zero_crossing_m(1.5, 0.4, 0.2) == doctest::Approx(1.00995).epsilon(1e-5));
  CHECK(*zero_crossing_m(1.5, 0.4, 0.4) == doctest::Approx(1.2329).epsilon(1e-4));
  CHECK(*zero_crossing_m(0.0, 0.7, 0.0) == 0.0);
  CHECK_FALSE(zero_crossing_m(1.0, -2.0, 0.1).has_value());
  for (double y : {0.2, 0.9, 1.6}) {
    const double m = *zero_crossing_m(1.5, y, 0.4);
    const auto lv = two_site_spectrum(m, 1.5, y, 0.4);
    CHECK(std::abs(lv.odd_minus - lv.even_minus) < 1e-12);
    // Ground-state parity flips exactly once along the m ray.
    const auto below = two_site_spectrum(0.5 * m, 1.5, y, 0.4);
    const auto above = two_site_spectrum(1.5 * m, 1.5, y, 0.4);
    CHECK((below.even_minus - below.odd_minus) * (above.even_minus - above.odd_minus) < 0.0);
  }
}

TEST_CASE("exact maps are even in m and vanish on the surface") {
  const auto m_axis = linspace(-2.0, 2.0, 21);
  const auto y_axis = linspace(0.2, 1.8, 9);
  // The interior field mbar breaks m -> -m beyond two sites, so longer
  // chains are checked with mbar = 0.
  for (std::size_t L : {2, 3, 4}) {
    const double mbar = L == 2 ? 0.4 : 0.0;
    const GapMap map = gap_map_exact(m_axis, y_axis, 1.5, 0.4, mbar, L, 2);
    CHECK(map.missing() == 0);
    CHECK(map.source == GapSource::Exact);
    for (Eigen::Index r = 0; r < map.gap.rows(); ++r) {
      for (Eigen::Index c = 0; c < map.gap.cols(); ++c) {
        CHECK(map.gap(r, c) >= 0.0);
        CHECK(std::abs(map.gap(r, c) - map.gap(r, map.gap.cols() - 1 - c)) < 1e-10);
      }
    }
  }
  const GapMap broken = gap_map_exact({-1.0, 1.0}, {1.0}, 1.5, 0.4, 0.4, 3);
  CHECK(std::abs(broken.gap(0, 0) - broken.gap(0, 1)) > 1e-3);
  const GapMap two = gap_map_exact({*zero_crossing_m(1.5, 0.6, 0.4)}, {0.6}, 1.5, 0.4, 0.4, 2);
  CHECK(two.gap(0, 0) < 1e-10);
  CHECK(parity_gap(kitaev_chain(KitaevParams::from_pauli(2, 3.0, 1.5, 0.6, 0.4))) < 0.0);
}

TEST_CASE("boundary fit on the exact map recovers z") {
  const auto m_axis = linspace(-2.0, 2.0, 21);
  const auto y_axis = linspace(0.2, 1.8, 21);
  const GapMap map = gap_map_exact(m_axis, y_axis, 1.5, 0.4, 0.4, 2);
  const BoundaryFit fit = fit_boundary_z(map, 1.5, -1e300, 1e300);
  CHECK(fit.converged);
  CHECK(std::abs(fit.delta_z) < 0.01);
  CHECK(fit.rms < 0.05);
  CHECK(fit.ridge.size() >= 15);
  const GapMap nothing = gap_map_exact({0.0, 0.1}, {1.0}, 1.5, 0.4, 0.4, 2);
  CHECK_THROWS_AS(fit_boundary_z(nothing, 1.5, -1e300, 1e300), InvalidArgument);
}

TEST_CASE("m-symmetry filter") {
  const auto m_axis = linspace(-2.0, 2.0, 11);
  const auto y_axis = linspace(0.2, 1.8, 5);
  const GapMap clean = gap_map_exact(m_axis, y_axis, 1.5, 0.4, 0.4, 2);
  auto [plus, minus] = split_by_m_sign(clean);
  REQUIRE(plus.m_axis.size() == 6);
  for (std::size_t j = 0; j < 6; ++j) CHECK(plus.m_axis[j] == doctest::Approx(0.4 * j));
  CHECK(minus.m_axis.front() == doctest::Approx(0.0));
  CHECK(minus.m_axis.back() == doctest::Approx(-2.0));

  SUBCASE("identical halves are unchanged") {
    const GapMap f = m_symmetry_filter(plus, minus);
    CHECK((f.gap - plus.gap).norm() < 1e-12);
    CHECK(f.source == GapSource::Filtered);
  }
  SUBCASE("a corrupted band on one side is replaced by the clean side") {
    const GapMap reference = plus;
    for (Eigen::Index c = 0; c < plus.gap.cols(); ++c) {
      plus.gap(2, c) += 1.5;  // another transition washing out the lowest one
      minus.gap(4, c) = std::numeric_limits<double>::quiet_NaN();
    }
    const GapMap f = m_symmetry_filter(plus, minus);
    CHECK((f.gap - reference.gap).norm() < 1e-12);
    CHECK(f.provenance_at(2, 1) == '-');
    CHECK(f.provenance_at(4, 1) == '+');
    CHECK(f.missing() == 0);
  }
  SUBCASE("incongruent grids are rejected") {
    GapMap other = minus;
    other.y_axis[0] += 0.1;
    CHECK_THROWS_AS(m_symmetry_filter(plus, other), InvalidArgument);
  }
  CHECK_THROWS_AS(split_by_m_sign(gap_map_exact({-1.0, 0.0, 0.5}, {1.0}, 1.5, 0.4, 0.4, 2)),
                  InvalidArgument);
}

TEST_CASE("gap closings along a cut grow with chain length") {
  const auto m_axis = linspace(-4.0, 4.0, 1601);
  std::size_t previous = 0;
  for (std::size_t L = 2; L <= 6; ++L) {
    const GapMap cut = gap_map_exact(m_axis, {1.3}, 1.5, 0.4, 0.4, L);
    std::vector<double> row;
    for (Eigen::Index c = 0; c < cut.signed_gap.cols(); ++c) row.push_back(cut.signed_gap(0, c));
    const std::size_t n = count_closings(row);
    CHECK(n >= previous);
    CHECK(n >= 2);
    previous = n;
  }
  CHECK(count_closings({1, 0, -1, std::nan(""), -2, 3}) == 2);
}

TEST_CASE("spectroscopic map without coupling has no dips") {
  SweepConfig sweep;
  sweep.grid = {-2.0, 6.0, 41};
  sweep.c = 0.0;
  sweep.t = 5.0;
  sweep.dt = 0.7;
  sweep.order = 2;
  sweep.hamiltonian = landau_zener(0, 1);
  const GapMap map = gap_map_spectroscopic({-0.5, 0.5}, {1.0, 1.2}, 1.5, 0.4, 0.4, 2, sweep);
  CHECK(map.missing() == 4);
  CHECK(map.provenance_at(0, 0) == '?');
}

TEST_CASE("spectroscopic map finds the lowest transition away from the boundary") {
  SweepConfig sweep;
  sweep.grid = {-2.0, 6.0, 81};
  sweep.c = 0.3;
  sweep.t = 5.0;
  sweep.dt = 0.7;
  sweep.order = 2;
  sweep.hamiltonian = landau_zener(0, 1);
  std::vector<SweepResult> sweeps;
  const GapMap map = gap_map_spectroscopic({1.6}, {0.6}, 1.5, 0.4, 0.4, 2, sweep, &sweeps);
  CHECK(sweeps.size() == 1);
  CHECK(gap_map_json(map) == gap_map_json(map));
  const auto lv = two_site_spectrum(1.6, 1.5, 0.6, 0.4);
  CHECK(map.signed_gap(0, 0) == doctest::Approx(lv.even_minus - lv.odd_minus).epsilon(0.3));
}
