#include "spectro/config.hpp"
#include "spectro/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace spectro;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return ExperimentConfig::parse(in, "/base");
}

}  // namespace

TEST_CASE("every bundled config parses and validates") {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(SPECTRO_CONFIG_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    CAPTURE(entry.path().string());
    const ExperimentConfig cfg = ExperimentConfig::load(entry.path());
    CHECK_NOTHROW(cfg.validate());
    if (cfg.resources) CHECK(std::filesystem::exists(cfg.resources->error_file));
    ++count;
  }
  CHECK(count >= 8);
}

TEST_CASE("sweep keys, fractions and defaults") {
  const auto cfg = parse(
      "[model]\ntype = landau-zener\na = 0.6\nb = 0.9\n"
      "[sweep]\nomega_start = -4\nomega_stop = 4\nomega_count = 161\nc = 0.1\nt = 10\ndt = 1/3\n"
      "order = 2\ninitial = eigen:1\nworkers = 3\n");
  CHECK(cfg.sweep.dt == doctest::Approx(1.0 / 3.0));
  CHECK(cfg.sweep.order == 2);
  CHECK(cfg.sweep.grid.count == 161);
  CHECK(cfg.sweep.initial.kind == InitialState::Kind::Eigenstate);
  CHECK(cfg.output_dir == "out");
  CHECK_FALSE(cfg.seed_given);
  const SweepConfig sc = cfg.sweep_config();
  CHECK(sc.hamiltonian.coefficient(PauliString::parse("Z")) == doctest::Approx(0.6));
  CHECK(sc.workers == 3);
}

TEST_CASE("malformed configs are config errors") {
  CHECK_THROWS_AS(parse("[model]\ntype = landau-zener\nfoo = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[colour]\nred = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("a = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[sweep]\nc = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse("[sweep]\ndt = 1/0\n"), ConfigError);
  CHECK_THROWS_AS(parse("[sweep]\nomega_count = -3\n"), ConfigError);
  CHECK_THROWS_AS(parse("[sweep]\ninitial = ground\n"), ConfigError);
  CHECK_THROWS_AS(parse("[scan]\nvalues = 1, 2\n"), ConfigError);
  CHECK_THROWS_AS(parse("[resources]\nprecision_qubits = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse("[map]\nfilter = maybe\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent.cfg"), ConfigError);
}

TEST_CASE("validation rules") {
  CHECK_THROWS_AS(parse("[model]\ntype = heisenberg\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[sweep]\nomega_count = 0\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[sweep]\nshots = 100\n").validate(), ConfigError);
  CHECK_NOTHROW(parse("[sweep]\nshots = 100\nseed = 4\n").validate());
  CHECK_THROWS_AS(parse("[model]\ntype = kitaev\nsites = 1\n").validate(), ConfigError);
  // y is a kitaev parameter, not a landau-zener one.
  CHECK_THROWS_AS(parse("[scan]\nparameter = y\nvalues = 1\n").validate(), ConfigError);
  CHECK_NOTHROW(parse("[model]\ntype = kitaev\n[scan]\nparameter = y\nvalues = 1\n").validate());
  CHECK_NOTHROW(parse("[scan]\nparameter = dt\nvalues = 0.1, 0.2\n").validate());
  CHECK_THROWS_AS(parse("[map]\nmode = exact\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[model]\ntype = kitaev\n[map]\nmode = fuzzy\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("[oracle]\nconvergence_dts = 0.1\n").validate(), ConfigError);
}

TEST_CASE("scan axes") {
  const auto cfg = parse("[model]\ntype = kitaev\n[scan]\nparameter = y\nstart = 0.7\nstop = 1.7\ncount = 11\n");
  REQUIRE(cfg.scan);
  CHECK(cfg.scan->values.size() == 11);
  CHECK(cfg.scan->values.back() == doctest::Approx(1.7));
  CHECK(cfg.scan->track);
  const auto a = parse("[scan]\nparameter = a\nvalues = -2, 0, 2\ntrack = false\n");
  CHECK(a.scan->values == std::vector<double>{-2, 0, 2});
  CHECK_FALSE(a.scan->track);
  CHECK(linspace(0, 1, 1) == std::vector<double>{0});
  CHECK(parse_number_list("1, 2.5 ,1/4") == std::vector<double>{1, 2.5, 0.25});
}

TEST_CASE("kitaev model in either parameterisation") {
  const auto pauli = parse("[model]\ntype = kitaev\nsites = 3\nx = 1.5\ny = 0.4\nz = 0.2\nm = 1.0\n");
  CHECK(pauli.model.effective_mbar() == 0.2);
  const auto h = pauli.model.build();
  CHECK(h.n_qubits() == 3);
  CHECK(h.coefficient(PauliString::parse("IZI")) == doctest::Approx(-1.2));

  const auto ferm = parse("[model]\ntype = kitaev\nsites = 2\nmu = 1.6\ng = 1.9\ndelta = 1.1\nV = 0.8\n");
  CHECK(ferm.model.x == doctest::Approx(1.5));
  CHECK(ferm.model.y == doctest::Approx(0.4));
  CHECK(ferm.model.z == doctest::Approx(0.2));
  CHECK(ferm.model.m == doctest::Approx(1.0));
  CHECK(ferm.model.effective_mbar() == doctest::Approx(0.2));
  CHECK_THROWS_AS(parse("[model]\ntype = kitaev\nmu = 1\n"), ConfigError);

  ModelSpec spec = pauli.model;
  CHECK(spec.set("y", 0.9));
  CHECK(spec.y == 0.9);
  CHECK_FALSE(spec.set("c", 0.1));
}

TEST_CASE("map section and relative paths") {
  const auto cfg = parse(
      "[model]\ntype = kitaev\nsites = 2\n[map]\nmode = both\nsites = 2, 3\nm_values = -1, 0, 1\n"
      "y_start = 0.2\ny_stop = 1.8\ny_count = 3\ncut_y = 1.3\n"
      "[resources]\nerror_file = errs.txt\n[output]\ndir = results\n");
  REQUIRE(cfg.map);
  CHECK(cfg.map->sites == std::vector<std::size_t>{2, 3});
  CHECK(cfg.map->m_axis == std::vector<double>{-1, 0, 1});
  CHECK(cfg.map->y_axis.size() == 3);
  CHECK(*cfg.map->cut_y == 1.3);
  CHECK(cfg.map->cut_m_axis.size() == 1601);
  CHECK(cfg.resources->error_file == std::filesystem::path("/base/errs.txt"));
  CHECK(cfg.output_dir == "results");
  CHECK_NOTHROW(cfg.validate());
}
