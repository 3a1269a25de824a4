#pragma once

#include "spectro/pauli.hpp"

#include <cstddef>
#include <vector>

namespace spectro {

/// exp(-i theta/2 P) for a Pauli string P on the full register.
struct Gate {
  PauliString pauli;
  double theta = 0.0;
};

struct CircuitInfo {
  int order = 1;
  std::size_t steps = 0;
  double dt = 0.0;
  double omega = 0.0;
  double coupling = 0.0;
  std::size_t probed = 1;
};

class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits = 0) : n_qubits_(n_qubits) {}

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  CircuitInfo info;

  /// Appends a gate; throws InvalidArgument if its string does not act on
  /// exactly this register.
  void add(PauliString pauli, double theta);

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Gate> gates_;
};

/// Step count N_t = round(t / dt) together with the step t / N_t that makes
/// N_t steps land exactly on t.
struct TrotterSchedule {
  std::size_t steps = 0;
  double dt = 0.0;
};

TrotterSchedule trotter_schedule(double t, double dt);

/// -omega/2 Z_0 + c X_0 X_probed + H on qubits 1..n; `probed` is 1-based.
PauliHamiltonian resonance_hamiltonian(const PauliHamiltonian& h, double omega, double c,
                                       std::size_t probed);

/// `steps` Trotter steps of the resonance Hamiltonian on n+1 qubits.
/// Order 1 emits the system terms in order, then R^z_0(-omega dt), then
/// R^xx_{0,probed}(2c dt). Order 2 is the symmetric splitting of that same
/// sequence at half angles.
Circuit build_resonance_circuit(const PauliHamiltonian& h, double omega, double c, double dt,
                                std::size_t steps, int order, std::size_t probed = 1);

/// One Trotter step of the system Hamiltonian alone, on n qubits.
Circuit system_step_circuit(const PauliHamiltonian& h, double dt, int order);

}  // namespace spectro
