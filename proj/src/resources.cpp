#include "spectro/resources.hpp"

#include "spectro/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>

namespace spectro {

const char* to_string(Decomposition d) {
  return d == Decomposition::CnotPair ? "cnot-pair" : "native-zx";
}

void GateErrorModel::validate() const {
  for (double r : {two_qubit, single_qubit, measurement, scaled_floor}) {
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("error rates must lie in [0, 1]");
  }
  if (scaled_floor > two_qubit) throw ConfigError("scaled_floor must not exceed two_qubit");
}

double GateErrorModel::scaled_error(double theta) const {
  const double wrapped = std::remainder(theta, 2.0 * std::numbers::pi);
  return std::max(scaled_floor, std::abs(wrapped) / std::numbers::pi * two_qubit);
}

GateErrorModel GateErrorModel::parse(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed error-model file: ") + e.message());
  }
  auto rate = [&](const char* key) {
    const auto v = tree.get_optional<std::string>(key);
    if (!v) throw ConfigError(std::string("error-model file lacks '") + key + "'");
    try {
      std::size_t used = 0;
      const double x = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument("trailing text");
      return x;
    } catch (const std::exception&) {
      throw ConfigError(std::string("error-model value for '") + key + "' is not a number");
    }
  };
  GateErrorModel m;
  m.two_qubit = rate("two_qubit");
  m.single_qubit = rate("single_qubit");
  m.measurement = rate("measurement");
  m.scaled_floor = rate("scaled_floor");
  m.validate();
  return m;
}

GateErrorModel GateErrorModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read error-model file " + path.string());
  return parse(in);
}

namespace {

std::size_t non_z_sites(const PauliString& p) {
  std::size_t n = 0;
  for (Pauli op : p.ops()) n += (op == Pauli::X || op == Pauli::Y) ? 1 : 0;
  return n;
}

// Adds one Pauli exponential of weight w (basis changes counted separately).
void add_exponential(ResourceReport& r, std::size_t w, double theta, Decomposition d) {
  r.single_qubit_gates += 1;
  if (w < 2) return;
  if (d == Decomposition::CnotPair) {
    r.cnots += 2 * (w - 1);
  } else {
    r.cnots += 2 * (w - 2);
    r.scaled_angles.push_back(theta);
  }
}

}  // namespace

ResourceReport count_spectroscopic(const Circuit& circuit, Decomposition d) {
  ResourceReport r;
  r.algorithm = "spectroscopic";
  r.decomposition = d;
  r.n_qubits = circuit.n_qubits();
  for (const auto& g : circuit.gates()) {
    r.single_qubit_gates += 2 * non_z_sites(g.pauli);
    add_exponential(r, g.pauli.weight(), g.theta, d);
  }
  r.measurements = 1;
  return r;
}

ResourceReport count_spectroscopic(const PauliHamiltonian& h, double c, double dt,
                                   std::size_t steps, int order, Decomposition d) {
  return count_spectroscopic(build_resonance_circuit(h, 0.0, c, dt, steps, order, 1), d);
}

ResourceReport count_qpe(const PauliHamiltonian& h, std::size_t precision_qubits, double dt,
                         std::size_t steps, int order, Decomposition d) {
  if (precision_qubits < 1) throw InvalidArgument("QPE needs at least one precision qubit");
  if (precision_qubits > 30) throw InvalidArgument("too many precision qubits");
  if (steps < 1) throw InvalidArgument("at least one Trotter step is required");
  const Circuit step = system_step_circuit(h, dt, order);
  const std::size_t repetitions = steps * ((std::size_t{1} << precision_qubits) - 1);

  ResourceReport one;
  one.decomposition = d;
  for (const auto& g : step.gates()) {
    const std::size_t w = g.pauli.weight();
    one.single_qubit_gates += 4 * non_z_sites(g.pauli);
    add_exponential(one, w, 0.5 * g.theta, d);
    add_exponential(one, w + 1, 0.5 * g.theta, d);
  }

  ResourceReport r;
  r.algorithm = "qpe";
  r.decomposition = d;
  r.n_qubits = h.n_qubits() + precision_qubits;
  r.cnots = one.cnots * repetitions + precision_qubits * (precision_qubits - 1) / 2;
  r.single_qubit_gates = one.single_qubit_gates * repetitions + 2 * precision_qubits;
  r.scaled_angles.reserve(one.scaled_angles.size() * repetitions);
  for (std::size_t k = 0; k < repetitions; ++k) {
    r.scaled_angles.insert(r.scaled_angles.end(), one.scaled_angles.begin(), one.scaled_angles.end());
  }
  r.measurements = precision_qubits;
  return r;
}

double infidelity_score(const ResourceReport& r, const GateErrorModel& model) {
  double log_success = 0.0;
  bool certain_failure = false;
  auto include = [&](double eps, std::size_t count) {
    if (count == 0 || eps <= 0.0) return;
    if (eps >= 1.0) {
      certain_failure = true;
      return;
    }
    log_success += static_cast<double>(count) * std::log1p(-eps);
  };
  include(model.two_qubit, r.cnots);
  include(model.single_qubit, r.single_qubit_gates);
  include(model.measurement, r.measurements);
  for (double theta : r.scaled_angles) include(model.scaled_error(theta), 1);
  if (certain_failure) return 1.0;
  return std::clamp(-std::expm1(log_success), 0.0, 1.0);
}

std::string resource_report_json(const std::vector<ResourceReport>& reports,
                                 const GateErrorModel& model) {
  using nlohmann::json;
  json list = json::array();
  for (const auto& r : reports) {
    list.push_back({{"algorithm", r.algorithm},
                    {"decomposition", to_string(r.decomposition)},
                    {"n_qubits", r.n_qubits},
                    {"two_qubit_gates", r.two_qubit_gates()},
                    {"cnots", r.cnots},
                    {"scaled_zx_gates", r.scaled_angles.size()},
                    {"single_qubit_gates", r.single_qubit_gates},
                    {"measurements", r.measurements},
                    {"infidelity", infidelity_score(r, model)}});
  }
  json doc = {{"error_model",
               {{"two_qubit", model.two_qubit},
                {"single_qubit", model.single_qubit},
                {"measurement", model.measurement},
                {"scaled_floor", model.scaled_floor}}},
              {"reports", list}};
  return doc.dump(2) + "\n";
}

}  // namespace spectro
