#include "spectro/statevector.hpp"

#include "spectro/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace spectro {

namespace {

constexpr std::size_t kStateQubitCap = 28;

constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_qubit(const StateVector& s, std::size_t qubit) {
  if (qubit >= s.n_qubits()) throw InvalidArgument("qubit index out of range");
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > kStateQubitCap) throw OracleCapacity("register too large for a statevector");
  amps_ = VectorXc::Zero(Eigen::Index{1} << n_qubits);
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, VectorXc amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits > kStateQubitCap) throw OracleCapacity("register too large for a statevector");
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
    throw InvalidArgument("amplitude vector length is not 2^n");
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > 1e-10) throw InvalidArgument("state is not normalised");
}

StateVector StateVector::basis(std::size_t n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= (std::uint64_t{1} << n_qubits)) throw InvalidArgument("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

StateVector StateVector::probe_with_system(const VectorXc& system) {
  const auto n_sys = static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(system.size())));
  if ((Eigen::Index{1} << n_sys) != system.size()) {
    throw InvalidArgument("system vector length is not a power of two");
  }
  VectorXc full = VectorXc::Zero(system.size() * 2);
  for (Eigen::Index k = 0; k < system.size(); ++k) full[2 * k] = system[k];
  return StateVector(n_sys + 1, std::move(full));
}

void StateVector::apply(const Gate& gate) {
  if (gate.pauli.n_qubits() != n_qubits_) throw InvalidArgument("gate register mismatch");
  const double cs = std::cos(0.5 * gate.theta);
  const Complex msin(0.0, -std::sin(0.5 * gate.theta));
  const std::uint64_t flip = gate.pauli.flip_mask();
  const std::uint64_t sign = gate.pauli.sign_mask();
  const Complex iy = kIPow[gate.pauli.y_count() % 4];
  const auto dim = static_cast<std::uint64_t>(amps_.size());
  // P|c> = phase(c) |c ^ flip>
  auto phase = [&](std::uint64_t c) {
    return (std::popcount(c & sign) & 1) ? -iy : iy;
  };

  if (flip == 0) {
    for (std::uint64_t c = 0; c < dim; ++c) {
      amps_[static_cast<Eigen::Index>(c)] *= cs + msin * phase(c);
    }
    return;
  }
  const std::uint64_t low = flip & (~flip + 1);
  for (std::uint64_t c = 0; c < dim; ++c) {
    if (c & low) continue;
    const std::uint64_t d = c ^ flip;
    const Complex ac = amps_[static_cast<Eigen::Index>(c)];
    const Complex ad = amps_[static_cast<Eigen::Index>(d)];
    amps_[static_cast<Eigen::Index>(c)] = cs * ac + msin * phase(d) * ad;
    amps_[static_cast<Eigen::Index>(d)] = cs * ad + msin * phase(c) * ac;
  }
}

StateVector apply(const Circuit& circuit, StateVector state) {
  if (circuit.n_qubits() != state.n_qubits()) {
    throw InvalidArgument("circuit acts on " + std::to_string(circuit.n_qubits()) +
                          " qubits, state has " + std::to_string(state.n_qubits()));
  }
  for (const auto& g : circuit.gates()) state.apply(g);
  return state;
}

double expectation_z(const StateVector& state, std::size_t qubit) {
  check_qubit(state, qubit);
  const auto& a = state.amplitudes();
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  double acc = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const double p = std::norm(a[k]);
    acc += (static_cast<std::uint64_t>(k) & mask) ? -p : p;
  }
  return std::clamp(acc, -1.0, 1.0);
}

double sample_z(const StateVector& state, std::size_t qubit, std::size_t shots,
                std::uint64_t seed) {
  return sample_expectation(expectation_z(state, qubit), shots, seed);
}

double sample_expectation(double expectation, std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw InvalidArgument("shots must be positive");
  const double p_one = std::clamp(0.5 * (1.0 - expectation), 0.0, 1.0);
  std::mt19937_64 rng(seed);
  std::binomial_distribution<long long> draw(static_cast<long long>(shots), p_one);
  const long long ones = draw(rng);
  return 1.0 - 2.0 * static_cast<double>(ones) / static_cast<double>(shots);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  return rng();
}

StateVector exact_evolve(const MatrixXc& hamiltonian, double t, const StateVector& state) {
  if (state.n_qubits() > kDenseQubitCap) {
    throw OracleCapacity("exact evolution limited to " + std::to_string(kDenseQubitCap) + " qubits");
  }
  if (hamiltonian.rows() != state.amplitudes().size() || hamiltonian.cols() != hamiltonian.rows()) {
    throw InvalidArgument("Hamiltonian dimension does not match the state");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(hamiltonian);
  if (es.info() != Eigen::Success) throw Error("eigen-decomposition failed");
  const MatrixXc& v = es.eigenvectors();
  VectorXc coeffs = v.adjoint() * state.amplitudes();
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::exp(Complex(0.0, -es.eigenvalues()[k] * t));
  }
  VectorXc out = v * coeffs;
  out /= out.norm();
  return StateVector(state.n_qubits(), std::move(out));
}

StateVector exact_evolve(const PauliHamiltonian& hamiltonian, double t, const StateVector& state) {
  if (hamiltonian.n_qubits() != state.n_qubits()) throw InvalidArgument("register mismatch");
  return exact_evolve(to_dense(hamiltonian), t, state);
}

double noisy_expectation_z(const Circuit& circuit, const StateVector& state, double p_depol,
                           std::uint64_t seed, std::size_t trajectories, std::size_t qubit) {
  if (!(p_depol >= 0.0 && p_depol <= 1.0)) throw InvalidArgument("p_depol must lie in [0, 1]");
  if (p_depol == 0.0) return expectation_z(apply(circuit, state), qubit);
  if (trajectories == 0) throw InvalidArgument("trajectories must be positive");
  if (circuit.n_qubits() != state.n_qubits()) throw InvalidArgument("circuit/state mismatch");

  static constexpr Pauli kPaulis[4] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  const std::size_t n = circuit.n_qubits();
  double total = 0.0;
  for (std::size_t traj = 0; traj < trajectories; ++traj) {
    std::mt19937_64 rng(derive_seed(seed, traj, 1));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> letter(0, 3);
    StateVector psi = state;
    for (const auto& g : circuit.gates()) {
      psi.apply(g);
      if (g.pauli.weight() < 2 || coin(rng) >= p_depol) continue;
      std::vector<Pauli> ops(n, Pauli::I);
      for (std::size_t q : g.pauli.support()) ops[q] = kPaulis[letter(rng)];
      PauliString err(std::move(ops));
      // exp(-i pi/2 P) = -i P applies the error up to a global phase.
      if (!err.is_identity()) psi.apply({std::move(err), M_PI});
    }
    total += expectation_z(psi, qubit);
  }
  return total / static_cast<double>(trajectories);
}

double exact_resonance_z0(const PauliHamiltonian& h, double omega, double c, double t,
                          const VectorXc& system_state, std::size_t probed) {
  const StateVector psi0 = StateVector::probe_with_system(system_state);
  return expectation_z(exact_evolve(resonance_hamiltonian(h, omega, c, probed), t, psi0), 0);
}

ConvergenceSeries trotter_convergence(const PauliHamiltonian& h, double omega, double c, double t,
                                      int order, const std::vector<double>& dts,
                                      const VectorXc& system_state, std::size_t probed) {
  const StateVector psi0 = StateVector::probe_with_system(system_state);
  const VectorXc exact =
      exact_evolve(resonance_hamiltonian(h, omega, c, probed), t, psi0).amplitudes();
  ConvergenceSeries out;
  out.order = order;
  for (double dt : dts) {
    const TrotterSchedule sched = trotter_schedule(t, dt);
    const Circuit circ = build_resonance_circuit(h, omega, c, sched.dt, sched.steps, order, probed);
    out.dts.push_back(sched.dt);
    out.errors.push_back((apply(circ, psi0).amplitudes() - exact).norm());
  }
  out.slope = loglog_slope(out.dts, out.errors);
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("slope needs two or more points");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("log-log slope needs positive data");
    a(static_cast<Eigen::Index>(i), 0) = std::log(x[i]);
    a(static_cast<Eigen::Index>(i), 1) = 1.0;
    b[static_cast<Eigen::Index>(i)] = std::log(y[i]);
  }
  return a.colPivHouseholderQr().solve(b)[0];
}

MatrixXc circuit_unitary(const Circuit& circuit) {
  if (circuit.n_qubits() > kDenseQubitCap) throw OracleCapacity("circuit too large for a dense unitary");
  const Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits();
  MatrixXc u(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    StateVector s = StateVector::basis(circuit.n_qubits(), static_cast<std::uint64_t>(k));
    u.col(k) = apply(circuit, std::move(s)).amplitudes();
  }
  return u;
}

Spectrum trotter_step_spectrum(const PauliHamiltonian& h, double dt, int order) {
  return unitary_spectrum(circuit_unitary(system_step_circuit(h, dt, order)), dt, h.n_qubits());
}

}  // namespace spectro
