#include "spectro/error.hpp"
#include "spectro/pauli.hpp"

#include <doctest.h>

#include <random>

using namespace spectro;

namespace {

MatrixXc single(Pauli p) {
  return to_dense(PauliString({p}));
}

}  // namespace

TEST_CASE("pauli strings parse, print and expose their masks") {
  const PauliString s = PauliString::parse("XIZY");
  CHECK(s.n_qubits() == 4);
  CHECK(s.to_string() == "XIZY");
  CHECK(s.weight() == 3);
  CHECK(s.support() == std::vector<std::size_t>{0, 2, 3});
  CHECK(s.flip_mask() == 0b1001);
  CHECK(s.sign_mask() == 0b1100);
  CHECK(s.y_count() == 1);
  CHECK(PauliString::parse("III").is_identity());
  CHECK_THROWS_AS(PauliString::parse("XQ"), InvalidArgument);

  const PauliString e = PauliString::parse("XZ").embedded(4, 1);
  CHECK(e.to_string() == "IXZI");
}

TEST_CASE("dense single-qubit Paulis follow the standard matrices") {
  const Complex i(0.0, 1.0);
  MatrixXc y(2, 2);
  y << 0.0, -i, i, 0.0;
  CHECK((single(Pauli::Y) - y).norm() < 1e-15);
  MatrixXc z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  CHECK((single(Pauli::Z) - z).norm() < 1e-15);
  CHECK((single(Pauli::X) * single(Pauli::Y) - i * single(Pauli::Z)).norm() < 1e-15);
}

TEST_CASE("qubit k is bit k of the basis index") {
  // X on qubit 0 maps |00> (index 0) to index 1.
  const MatrixXc x0 = to_dense(PauliString::parse("XI"));
  CHECK(std::abs(x0(1, 0) - 1.0) < 1e-15);
  const MatrixXc z1 = to_dense(PauliString::parse("IZ"));
  CHECK(z1(2, 2).real() == doctest::Approx(-1.0));
  CHECK(z1(1, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("hamiltonians merge duplicate strings and drop zeros") {
  const auto zz = PauliString::parse("ZZ");
  const auto xi = PauliString::parse("XI");
  const PauliHamiltonian h(2, {{0.5, zz}, {1.0, xi}, {0.25, zz}, {-1.0, xi}});
  CHECK(h.size() == 1);
  CHECK(h.coefficient(zz) == doctest::Approx(0.75));
  CHECK(h.coefficient(xi) == 0.0);
  CHECK_THROWS_AS(PauliHamiltonian(3, {{1.0, zz}}), InvalidArgument);

  const PauliHamiltonian sum = h + PauliHamiltonian(2, {{1.0, xi}});
  CHECK(sum.terms().front().string == zz);
  CHECK(sum.scaled(2.0).coefficient(xi) == doctest::Approx(2.0));
}

TEST_CASE("landau-zener model is a Z + b Y") {
  const MatrixXc h = to_dense(landau_zener(0.6, 0.9));
  const MatrixXc expected = 0.6 * single(Pauli::Z) + 0.9 * single(Pauli::Y);
  CHECK((h - expected).norm() < 1e-15);
}

TEST_CASE("kitaev chain terms") {
  const auto p = KitaevParams::from_pauli(3, 0.7, 1.5, 0.4, 0.2, 0.3);
  const PauliHamiltonian h = kitaev_chain(p);
  CHECK(h.n_qubits() == 3);
  CHECK(h.coefficient(PauliString::parse("XXI")) == doctest::Approx(1.5));
  CHECK(h.coefficient(PauliString::parse("IYY")) == doctest::Approx(0.4));
  CHECK(h.coefficient(PauliString::parse("ZZI")) == doctest::Approx(0.2));
  CHECK(h.coefficient(PauliString::parse("ZII")) == doctest::Approx(-0.7));
  CHECK(h.coefficient(PauliString::parse("IZI")) == doctest::Approx(-1.0));
  CHECK(h.coefficient(PauliString::parse("IIZ")) == doctest::Approx(-0.7));

  CHECK_THROWS_AS(kitaev_chain(KitaevParams::from_pauli(1, 1, 1, 1, 1)), InvalidModel);
}

TEST_CASE("fermionic and pauli couplings round-trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const double mu = u(rng), g = u(rng), delta = u(rng), V = u(rng);
    const auto p = KitaevParams::from_fermionic(4, mu, g, delta, V);
    CHECK(2.0 * p.x == doctest::Approx(g + delta));
    CHECK(2.0 * p.y == doctest::Approx(g - delta));
    CHECK(4.0 * p.z == doctest::Approx(V));
    CHECK(4.0 * p.m == doctest::Approx(2.0 * mu + V));
    CHECK(p.mbar == doctest::Approx(p.z));
    const auto back = p.fermionic();
    REQUIRE(back.has_value());
    CHECK(back->mu == doctest::Approx(mu));
    CHECK(back->g == doctest::Approx(g));
    CHECK(back->delta == doctest::Approx(delta));
    CHECK(back->V == doctest::Approx(V));
  }
  CHECK_FALSE(KitaevParams::from_pauli(2, 1.0, 1.5, 0.4, 0.2, 0.3).fermionic().has_value());
}

TEST_CASE("parity diagonal and the dense cap") {
  const Eigen::VectorXd d = parity_diagonal(3);
  CHECK(d.size() == 8);
  CHECK(d[0] == 1.0);
  CHECK(d[1] == -1.0);
  CHECK(d[3] == 1.0);
  CHECK(d[7] == -1.0);
  CHECK_THROWS_AS(to_dense(PauliHamiltonian(kDenseQubitCap + 1)), OracleCapacity);
}
