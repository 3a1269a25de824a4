#pragma once

#include "spectro/pauli.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace spectro {

/// Eigen-decomposition of a system Hamiltonian (or of one Trotter step, in
/// which case `energies` are quasi-energies).
///
/// Ordering is deterministic: ascending energy; within a degenerate cluster
/// parity +1 before -1, then by the index of the largest-magnitude basis
/// amplitude. Each eigenvector is phased so that amplitude is real positive.
struct Spectrum {
  std::size_t n_qubits = 0;
  Eigen::VectorXd energies;
  MatrixXc states;          ///< column k is the eigenvector of energies[k]
  std::vector<int> parities;  ///< +1 / -1 eigenvalue of prod Z, 0 if undefined

  std::size_t size() const { return static_cast<std::size_t>(energies.size()); }
  bool parity_conserving() const;
};

/// Full dense diagonalisation. When H commutes with prod_i Z_i each parity
/// block is diagonalised separately so eigenvectors carry definite parity.
Spectrum exact_spectrum(const PauliHamiltonian& h);
Spectrum exact_spectrum(const MatrixXc& hermitian, std::size_t n_qubits);

/// Spectral decomposition of a unitary U = exp(-i H_eff dt) via complex
/// Schur form; energies are the quasi-energies in (-pi/dt, pi/dt].
Spectrum unitary_spectrum(const MatrixXc& unitary, double dt, std::size_t n_qubits);

/// [from, to] transition with delta = E_to - E_from.
struct Transition {
  std::size_t from = 0;
  std::size_t to = 0;
  double delta = 0.0;
};

/// Every ordered pair including the [k,k] self transitions.
std::vector<Transition> transition_energies(const Spectrum& s);

/// <m| X_qubit |n> in the eigenbasis; `qubit` is 1-based on the system
/// register (qubit 1 is the first system qubit).
Complex chi_element(const Spectrum& s, std::size_t m, std::size_t n, std::size_t qubit);

/// Coefficients alpha_n = <n|psi> of a system state in the eigenbasis.
VectorXc eigenbasis_amplitudes(const Spectrum& s, const VectorXc& system_state);

}  // namespace spectro
