#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spectro {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Largest register the dense oracles (to_dense, exact_spectrum,
/// exact_evolve) accept.
inline constexpr std::size_t kDenseQubitCap = 14;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Paulis. Position k acts on qubit k, and
/// qubit k is bit k of a computational-basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits);
  explicit PauliString(std::vector<Pauli> ops);

  /// "XIZ" puts X on qubit 0 and Z on qubit 2.
  static PauliString parse(std::string_view text);
  static PauliString single(std::size_t n_qubits, std::size_t qubit, Pauli p);
  static PauliString pair(std::size_t n_qubits, std::size_t q1, Pauli p1,
                          std::size_t q2, Pauli p2);

  std::size_t n_qubits() const { return ops_.size(); }
  Pauli operator[](std::size_t q) const { return ops_[q]; }
  const std::vector<Pauli>& ops() const { return ops_; }

  std::size_t weight() const;
  std::vector<std::size_t> support() const;
  bool is_identity() const { return weight() == 0; }

  /// Bits where the operator flips the basis state (X or Y).
  std::uint64_t flip_mask() const;
  /// Bits that contribute a (-1)^b sign (Y or Z).
  std::uint64_t sign_mask() const;
  std::size_t y_count() const;

  /// The same string placed on a larger register starting at `offset`.
  PauliString embedded(std::size_t n_total, std::size_t offset) const;

  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> ops_;
};

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;
};

/// Real-weighted sum of Pauli strings on a fixed register. Duplicate strings
/// are merged on construction and exact zeros dropped; the order of first
/// appearance is kept because the Trotter circuits follow it.
class PauliHamiltonian {
 public:
  explicit PauliHamiltonian(std::size_t n_qubits = 0);
  PauliHamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms);

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of `s`, zero when absent.
  double coefficient(const PauliString& s) const;

  PauliHamiltonian operator+(const PauliHamiltonian& other) const;
  PauliHamiltonian scaled(double factor) const;
  PauliHamiltonian embedded(std::size_t n_total, std::size_t offset) const;

  std::string to_string() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Couplings of the interacting Kitaev chain in both parameterisations:
/// fermionic (mu, g, delta, V) and the Jordan-Wigner Pauli form
/// (x, y, z, m, mbar) with 2x = g + delta, 2y = g - delta, 4z = V,
/// 4m = 2mu + V, 4mbar = V.
struct KitaevParams {
  std::size_t sites = 2;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double m = 0.0;
  double mbar = 0.0;

  static KitaevParams from_fermionic(std::size_t sites, double mu, double g,
                                     double delta, double V);
  static KitaevParams from_pauli(std::size_t sites, double m, double x,
                                 double y, double z, double mbar);
  /// Same Pauli couplings with mbar = z, the value a single V implies.
  static KitaevParams from_pauli(std::size_t sites, double m, double x,
                                 double y, double z);

  struct Fermionic {
    double mu, g, delta, V;
  };
  /// Inverse map. Empty when mbar != z, which no single V can produce.
  std::optional<Fermionic> fermionic(double tol = 1e-14) const;
};

/// Single spin in two opposing fields: a Z + b Y on one system qubit.
PauliHamiltonian landau_zener(double a, double b);

/// Jordan-Wigner Kitaev chain:
///   x sum X_i X_{i+1} + y sum Y_i Y_{i+1} + z sum Z_i Z_{i+1}
///   - m sum_i Z_i - mbar sum_{i=2..L-1} Z_i
/// The constant the encoding produces, (mu L)/2 + V (L-1)/4, is dropped;
/// spectroscopy only sees energy differences.
PauliHamiltonian kitaev_chain(const KitaevParams& p);

/// Dense 2^n x 2^n matrix. Throws OracleCapacity above kDenseQubitCap.
MatrixXc to_dense(const PauliHamiltonian& h);
MatrixXc to_dense(const PauliString& s);

/// Diagonal of prod_i Z_i as +-1 entries.
Eigen::VectorXd parity_diagonal(std::size_t n_qubits);

}  // namespace spectro
