#include "spectro/circuit.hpp"

#include "spectro/error.hpp"

#include <cmath>

namespace spectro {

void Circuit::add(PauliString pauli, double theta) {
  if (pauli.n_qubits() != n_qubits_) {
    throw InvalidArgument("gate " + pauli.to_string() + " does not fit a " +
                          std::to_string(n_qubits_) + "-qubit circuit");
  }
  if (!std::isfinite(theta)) throw InvalidArgument("non-finite gate angle");
  gates_.push_back({std::move(pauli), theta});
}

TrotterSchedule trotter_schedule(double t, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("total time must be positive");
  const double ratio = std::round(t / dt);
  const auto steps = static_cast<std::size_t>(std::max(1.0, ratio));
  return {steps, t / static_cast<double>(steps)};
}

namespace {

void check_probed(const PauliHamiltonian& h, std::size_t probed) {
  if (probed == 0) throw InvalidArgument("the probe cannot probe itself (probed = 0)");
  if (probed > h.n_qubits()) {
    throw InvalidArgument("probed qubit " + std::to_string(probed) + " outside system of " +
                          std::to_string(h.n_qubits()) + " qubits");
  }
}

void check_order(int order) {
  if (order != 1 && order != 2) throw InvalidArgument("Trotter order must be 1 or 2");
}

// The generator sequence of one first-order step, as (string, theta-per-unit-dt).
std::vector<Gate> step_sequence(const PauliHamiltonian& h, std::size_t n_total,
                                std::size_t offset) {
  std::vector<Gate> seq;
  for (const auto& term : h.terms()) {
    if (term.string.is_identity()) continue;
    seq.push_back({term.string.embedded(n_total, offset), 2.0 * term.coeff});
  }
  return seq;
}

void emit(Circuit& circ, const std::vector<Gate>& seq, double dt, std::size_t steps, int order) {
  for (std::size_t s = 0; s < steps; ++s) {
    if (order == 1) {
      for (const auto& g : seq) circ.add(g.pauli, g.theta * dt);
    } else {
      for (const auto& g : seq) circ.add(g.pauli, 0.5 * g.theta * dt);
      for (auto it = seq.rbegin(); it != seq.rend(); ++it) circ.add(it->pauli, 0.5 * it->theta * dt);
    }
  }
}

}  // namespace

PauliHamiltonian resonance_hamiltonian(const PauliHamiltonian& h, double omega, double c,
                                       std::size_t probed) {
  check_probed(h, probed);
  const std::size_t n = h.n_qubits() + 1;
  PauliHamiltonian probe(n, {{-0.5 * omega, PauliString::single(n, 0, Pauli::Z)},
                             {c, PauliString::pair(n, 0, Pauli::X, probed, Pauli::X)}});
  return probe + h.embedded(n, 1);
}

Circuit build_resonance_circuit(const PauliHamiltonian& h, double omega, double c, double dt,
                                std::size_t steps, int order, std::size_t probed) {
  check_probed(h, probed);
  check_order(order);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (steps < 1) throw InvalidArgument("at least one Trotter step is required");

  const std::size_t n = h.n_qubits() + 1;
  std::vector<Gate> seq = step_sequence(h, n, 1);
  seq.push_back({PauliString::single(n, 0, Pauli::Z), -omega});
  seq.push_back({PauliString::pair(n, 0, Pauli::X, probed, Pauli::X), 2.0 * c});

  Circuit circ(n);
  emit(circ, seq, dt, steps, order);
  circ.info = {order, steps, dt, omega, c, probed};
  return circ;
}

Circuit system_step_circuit(const PauliHamiltonian& h, double dt, int order) {
  check_order(order);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  Circuit circ(h.n_qubits());
  emit(circ, step_sequence(h, h.n_qubits(), 0), dt, 1, order);
  circ.info.order = order;
  circ.info.steps = 1;
  circ.info.dt = dt;
  return circ;
}

}  // namespace spectro
