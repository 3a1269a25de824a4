#pragma once

#include "spectro/circuit.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace spectro {

/// How a two-qubit Pauli exponential is compiled: two CNOTs around a
/// Z rotation, or one angle-scaled native R^zx pulse.
enum class Decomposition { CnotPair, NativeZx };

const char* to_string(Decomposition d);

/// Error rates per operation kind. A scaled R^zx(theta) gate costs
/// max(scaled_floor, |theta|/pi * two_qubit) with theta wrapped to [-pi, pi].
struct GateErrorModel {
  double two_qubit = 0.0;
  double single_qubit = 0.0;
  double measurement = 0.0;
  double scaled_floor = 0.0;

  /// Throws ConfigError unless every rate lies in [0, 1] and
  /// scaled_floor <= two_qubit.
  void validate() const;
  double scaled_error(double theta) const;

  /// Flat key = value text with keys two_qubit, single_qubit, measurement
  /// and scaled_floor; '#' and ';' start comment lines.
  static GateErrorModel parse(std::istream& in);
  static GateErrorModel load(const std::filesystem::path& path);
};

struct ResourceReport {
  std::string algorithm;  ///< "spectroscopic" or "qpe"
  Decomposition decomposition = Decomposition::CnotPair;
  std::size_t n_qubits = 0;
  std::size_t cnots = 0;                 ///< full-strength two-qubit gates
  std::vector<double> scaled_angles;     ///< native R^zx angles (native-zx only)
  std::size_t single_qubit_gates = 0;
  std::size_t measurements = 0;

  std::size_t two_qubit_gates() const { return cnots + scaled_angles.size(); }
};

/// Counts for an already built circuit. Each exponential of weight w costs
/// one rotation plus two basis changes per non-Z site; for w >= 2 it adds
/// 2(w-1) CNOTs (cnot-pair) or 2(w-2) CNOTs and one scaled R^zx (native-zx).
/// One probe measurement.
ResourceReport count_spectroscopic(const Circuit& circuit, Decomposition d);

/// Counts for the resonance circuit of `h` run for N_t = steps.
ResourceReport count_spectroscopic(const PauliHamiltonian& h, double c, double dt,
                                   std::size_t steps, int order, Decomposition d);

/// Phase estimation with m precision qubits: N_t (2^m - 1) controlled
/// system Trotter steps, each controlled exponential of weight w compiled
/// as a weight-w and a weight-(w+1) exponential at half angle, plus
/// m(m-1)/2 two-qubit gates for the inverse QFT and m measurements.
ResourceReport count_qpe(const PauliHamiltonian& h, std::size_t precision_qubits, double dt,
                         std::size_t steps, int order, Decomposition d = Decomposition::CnotPair);

/// 1 - prod(1 - eps_i) over every counted gate and measurement.
double infidelity_score(const ResourceReport& report, const GateErrorModel& model);

std::string resource_report_json(const std::vector<ResourceReport>& reports,
                                 const GateErrorModel& model);

}  // namespace spectro
