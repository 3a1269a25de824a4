#include "spectro/error.hpp"
#include "spectro/oracles.hpp"
#include "spectro/spectroscopy.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace spectro;

namespace {

SweepConfig lz_config() {
  SweepConfig cfg;
  cfg.hamiltonian = landau_zener(0.6, 0.9);
  cfg.grid = {-4.0, 4.0, 161};
  cfg.c = 0.1;
  cfg.t = 10.0;
  cfg.dt = 1.0 / 3.0;
  cfg.order = 1;
  cfg.expected_dips = 3;
  cfg.workers = 2;
  return cfg;
}

// 1 - 2|A(omega, d)|^2 on a grid: a single clean resonance.
std::vector<double> synthetic(const std::vector<double>& w, double d, double c, double t) {
  std::vector<double> out;
  for (double x : w) out.push_back(1.0 - 2.0 * std::norm(amplitude_A({d, c, t, x})));
  return out;
}

}  // namespace

TEST_CASE("omega grid and initial-state syntax") {
  const OmegaGrid g{-1.0, 1.0, 5};
  CHECK(g.values() == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK(g.step() == doctest::Approx(0.5));

  CHECK(InitialState::parse("basis:3").index == 3);
  CHECK(InitialState::parse("eigen:1").kind == InitialState::Kind::Eigenstate);
  CHECK(InitialState::parse("eigen:2").to_string() == "eigen:2");
  CHECK_THROWS_AS(InitialState::parse("ground"), InvalidArgument);
  CHECK_THROWS_AS(InitialState::parse("basis:-1"), InvalidArgument);
}

TEST_CASE("sweep validation") {
  SweepConfig cfg = lz_config();
  CHECK_NOTHROW(cfg.validate());
  auto broken = [&](auto mutate) {
    SweepConfig c = lz_config();
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(broken([](SweepConfig& c) { c.grid.count = 0; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](SweepConfig& c) { c.grid.stop = -5; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](SweepConfig& c) { c.dt = 0; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](SweepConfig& c) { c.order = 4; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](SweepConfig& c) { c.probed = 2; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](SweepConfig& c) { c.initial.index = 2; }).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken([](SweepConfig& c) { c.noise = 2; }).validate(), InvalidArgument);
}

TEST_CASE("initial system states") {
  SweepConfig cfg = lz_config();
  cfg.initial = InitialState::parse("basis:1");
  VectorXc v = initial_system_state(cfg);
  CHECK(v[1] == Complex(1.0));
  cfg.initial = InitialState::parse("eigen:0");
  v = initial_system_state(cfg);
  const Spectrum s = exact_spectrum(cfg.hamiltonian);
  CHECK(std::abs(v.dot(s.states.col(0))) == doctest::Approx(1.0));
}

TEST_CASE("smoothing is a truncated five-point average") {
  const std::vector<double> v{0, 5, 0, 0, 10, 0};
  const auto s = smooth(v);
  REQUIRE(s.size() == v.size());
  CHECK(s[0] == doctest::Approx(5.0 / 3));
  CHECK(s[2] == doctest::Approx(15.0 / 5));
  CHECK(s[5] == doctest::Approx(10.0 / 3));
  CHECK_THROWS_AS(smooth({1, 2, 3}), InvalidArgument);
  const std::vector<double> flat(9, 0.25);
  for (double x : smooth(flat)) CHECK(x == doctest::Approx(0.25));
}

TEST_CASE("minima need depth relative to the local median") {
  std::vector<double> v(41, 1.0);
  v[10] = 0.5;
  v[30] = 0.985;  // shallower than 3 sigma
  CHECK(find_minima(v, 0.01) == std::vector<std::size_t>{10});
  CHECK(find_minima(v, 0.001) == std::vector<std::size_t>{10, 30});
  CHECK(shot_sigma(0) == doctest::Approx(0.01));
  CHECK(shot_sigma(400) == doctest::Approx(0.05));
}

TEST_CASE("a single dip fit recovers the resonance and its width") {
  const OmegaGrid g{-1.0, 3.0, 81};
  const auto w = g.values();
  const auto v = synthetic(w, 1.234, 0.1, 10.0);
  // Sinc side lobes show up as shallow extra minima; the main dip is the deepest.
  const auto candidates = find_minima(smooth(v), 0.01);
  std::size_t main = candidates.front();
  for (std::size_t k : candidates) {
    if (v[k] < v[main]) main = k;
  }
  const auto fits = fit_dips(w, v, {main}, 0.1, 10.0, 1);
  REQUIRE(fits.size() == 1);
  CHECK(fits[0].converged);
  CHECK(fits[0].model == DipModel::Single);
  CHECK(fits[0].center == doctest::Approx(1.234).epsilon(1e-6));
  CHECK(fits[0].residual < 1e-8);

  // Half-minimum width of 1 - 2 sin^2(t r / 2) (2c / r)^2 with r = sqrt(4c^2 + delta^2).
  const double width = fwhm(w, v, 1.234);
  CHECK(width == doctest::Approx(0.54).epsilon(0.05));
}

TEST_CASE("two dips merged into one candidate use the double model") {
  const OmegaGrid g{-2.0, 2.0, 81};
  const auto w = g.values();
  std::vector<double> v;
  for (double x : w) {
    const Complex a = amplitude_A({0.15, 0.1, 10.0, x}) + amplitude_A({-0.15, 0.1, 10.0, x});
    v.push_back(1.0 - 2.0 * std::norm(a));
  }
  const auto candidates = find_minima(smooth(v), 0.01);
  REQUIRE(!candidates.empty());
  std::size_t main = candidates.front();
  for (std::size_t k : candidates) {
    if (v[k] < v[main]) main = k;
  }
  CHECK(std::abs(w[main]) < 0.1);
  const auto fits = fit_dips(w, v, {main}, 0.1, 10.0, 2);
  REQUIRE(fits.size() == 2);
  CHECK(fits[0].model == DipModel::Double);
  CHECK(std::abs(fits[0].center) == doctest::Approx(0.15).epsilon(0.05));
  CHECK(fits[0].center == doctest::Approx(-fits[1].center).epsilon(0.05));
}

TEST_CASE("width edge cases") {
  std::vector<double> w, v;
  for (int k = 0; k < 21; ++k) {
    w.push_back(k * 0.1);
    v.push_back(0.1 * k);  // monotone: minimum at the edge, open width
  }
  DipFit d;
  d.center = 0.0;
  measure_width(w, v, d);
  CHECK(d.open_width);
  CHECK_THROWS_AS(fwhm({0, 1}, {0, 1}, 0.0), InvalidArgument);
}

TEST_CASE("rms and tracking") {
  CHECK(rms_vs_exact({1, 2}, {1, 4}) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(rms_vs_exact({}, {}), InvalidArgument);
  CHECK_THROWS_AS(rms_vs_exact({1}, {1, 2}), InvalidArgument);

  const auto path = track_dip({{-1.0, 0.3, 2.0}, {}, {0.6, -0.2}, {0.2, -0.2}}, 0.0);
  REQUIRE(path.size() == 4);
  CHECK(path[0].center == 0.3);
  CHECK(path[1].gap);
  CHECK(path[1].center == 0.3);
  CHECK(path[2].center == 0.6);
  CHECK(path[3].center == 0.2);
  // Equidistant candidates resolve toward the smaller |omega|.
  CHECK(track_dip({{0.5, -0.3}}, 0.1).front().center == -0.3);
  CHECK(track_dip({{1.0, -1.0}}, 0.0).front().center == 1.0);
}

TEST_CASE("zero dip depth") {
  std::vector<double> w, v;
  for (int k = -20; k <= 20; ++k) {
    const double x = 0.1 * k;
    w.push_back(x);
    v.push_back(1.0 - 0.2 * std::exp(-x * x / 0.02) + 0.05 * x * x);
  }
  // No interior maximum on either side, so the end points act as shoulders.
  CHECK(zero_dip_depth(w, v) == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(zero_dip_depth(w, v, 0.05) == doctest::Approx(0.4).epsilon(1e-6));
  std::vector<double> flat(w.size(), 1.0);
  CHECK(zero_dip_depth(w, flat) == 0.0);
}

TEST_CASE("landau-zener sweep finds both transitions") {
  const SweepResult r = run_sweep(lz_config());
  CHECK(r.omegas.size() == 161);
  const double gap = 2.0 * std::hypot(0.6, 0.9);
  int found = 0;
  for (const auto& d : r.dips) {
    if (std::abs(std::abs(d.center) - gap) < 0.05) {
      ++found;
      CHECK(d.fwhm() > 0.4);
      CHECK(d.fwhm() < 1.2);
    }
  }
  CHECK(found == 2);
  for (double z : r.z0) {
    CHECK(z <= 1.0);
    CHECK(z >= -1.0);
  }
}

TEST_CASE("sweeps are deterministic and independent of the worker count") {
  SweepConfig cfg = lz_config();
  cfg.grid.count = 41;
  cfg.shots = 500;
  cfg.seed = 99;
  cfg.workers = 1;
  const auto a = sweep_values(cfg);
  cfg.workers = 4;
  const auto b = sweep_values(cfg);
  CHECK(a == b);
  cfg.seed = 100;
  CHECK(sweep_values(cfg) != a);

  cfg.shots = 0;
  cfg.noise = 0.02;
  cfg.trajectories = 8;
  cfg.workers = 3;
  const auto n1 = sweep_values(cfg);
  cfg.workers = 1;
  CHECK(sweep_values(cfg) == n1);
}

TEST_CASE("csv and json output") {
  SweepConfig cfg = lz_config();
  cfg.grid.count = 21;
  const SweepResult r = run_sweep(cfg);
  std::ostringstream csv;
  write_sweep_csv(csv, r);
  const std::string text = csv.str();
  CHECK(text.rfind("omega,z0,z0_smoothed\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 22);
  CHECK(text.find("-4,") != std::string::npos);
  const std::string json = sweep_summary_json(r, {-2.16, 2.16});
  CHECK(json.find("\"dips\"") != std::string::npos);
  CHECK(json.find("\"rms_vs_exact\"") != std::string::npos);
  CHECK(json == sweep_summary_json(r, {-2.16, 2.16}));
}
