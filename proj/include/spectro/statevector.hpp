#pragma once

#include "spectro/circuit.hpp"
#include "spectro/spectrum.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spectro {

/// Dense register state. Qubit k is bit k of the amplitude index, so the
/// probe (qubit 0) is the lowest bit.
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(std::size_t n_qubits = 1);
  StateVector(std::size_t n_qubits, VectorXc amplitudes);

  static StateVector basis(std::size_t n_qubits, std::uint64_t index);
  /// |0>_probe tensor |system>, with the system on qubits 1..n.
  static StateVector probe_with_system(const VectorXc& system);

  std::size_t n_qubits() const { return n_qubits_; }
  const VectorXc& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }

  void apply(const Gate& gate);

 private:
  std::size_t n_qubits_;
  VectorXc amps_;
};

StateVector apply(const Circuit& circuit, StateVector state);

/// Exact <Z_qubit>.
double expectation_z(const StateVector& state, std::size_t qubit);

/// Shot estimate of <Z_qubit>: one binomial draw of `shots` outcomes from a
/// generator seeded with `seed`.
double sample_z(const StateVector& state, std::size_t qubit, std::size_t shots,
                std::uint64_t seed);

/// The same estimator drawn from a known expectation value.
double sample_expectation(double expectation, std::size_t shots, std::uint64_t seed);

/// Independent seed for job `index` of stream `stream` under a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t stream = 0);

/// exp(-i H t) |state> through the eigendecomposition of H.
StateVector exact_evolve(const MatrixXc& hamiltonian, double t, const StateVector& state);
StateVector exact_evolve(const PauliHamiltonian& hamiltonian, double t, const StateVector& state);

/// Average <Z_qubit> over stochastic trajectories in which every gate of
/// weight >= 2 is followed, with probability p_depol, by a uniformly drawn
/// Pauli on its support (16-element twirl for two-qubit gates). p_depol = 0
/// runs the noiseless circuit once.
double noisy_expectation_z(const Circuit& circuit, const StateVector& state, double p_depol,
                           std::uint64_t seed, std::size_t trajectories, std::size_t qubit = 0);

/// <Z_0> after exact evolution of |0>|system> under the resonance Hamiltonian.
double exact_resonance_z0(const PauliHamiltonian& h, double omega, double c, double t,
                          const VectorXc& system_state, std::size_t probed = 1);

struct ConvergenceSeries {
  int order = 1;
  std::vector<double> dts;     ///< step sizes actually used (t / N_t)
  std::vector<double> errors;  ///< ||psi_trotter - psi_exact||
  double slope = 0.0;          ///< least-squares slope of log(error) vs log(dt)
};

/// Trotter state error of the resonance circuit against exact evolution
/// over a series of step sizes.
ConvergenceSeries trotter_convergence(const PauliHamiltonian& h, double omega, double c, double t,
                                      int order, const std::vector<double>& dts,
                                      const VectorXc& system_state, std::size_t probed = 1);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Dense unitary of a circuit, column k being the image of basis state k.
MatrixXc circuit_unitary(const Circuit& circuit);

/// Quasi-energy spectrum of one system Trotter step exp(-i H_eff dt).
Spectrum trotter_step_spectrum(const PauliHamiltonian& h, double dt, int order);

}  // namespace spectro
