#include "spectro/pauli.hpp"

#include "spectro/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace spectro {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: break;
  }
  throw InvalidArgument(std::string("not a Pauli letter: '") + c + "'");
}

PauliString::PauliString(std::size_t n_qubits) : ops_(n_qubits, Pauli::I) {}

PauliString::PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {}

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> ops;
  ops.reserve(text.size());
  for (char c : text) ops.push_back(pauli_from_char(c));
  return PauliString(std::move(ops));
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t qubit,
                                Pauli p) {
  if (qubit >= n_qubits) throw InvalidArgument("qubit index out of range");
  PauliString s(n_qubits);
  s.ops_[qubit] = p;
  return s;
}

PauliString PauliString::pair(std::size_t n_qubits, std::size_t q1, Pauli p1,
                              std::size_t q2, Pauli p2) {
  if (q1 >= n_qubits || q2 >= n_qubits || q1 == q2) {
    throw InvalidArgument("invalid qubit pair");
  }
  PauliString s(n_qubits);
  s.ops_[q1] = p1;
  s.ops_[q2] = p2;
  return s;
}

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(
      std::count_if(ops_.begin(), ops_.end(), [](Pauli p) { return p != Pauli::I; }));
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    if (ops_[q] != Pauli::I) out.push_back(q);
  }
  return out;
}

std::uint64_t PauliString::flip_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    if (ops_[q] == Pauli::X || ops_[q] == Pauli::Y) mask |= std::uint64_t{1} << q;
  }
  return mask;
}

std::uint64_t PauliString::sign_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    if (ops_[q] == Pauli::Z || ops_[q] == Pauli::Y) mask |= std::uint64_t{1} << q;
  }
  return mask;
}

std::size_t PauliString::y_count() const {
  return static_cast<std::size_t>(std::count(ops_.begin(), ops_.end(), Pauli::Y));
}

PauliString PauliString::embedded(std::size_t n_total, std::size_t offset) const {
  if (offset + ops_.size() > n_total) {
    throw InvalidArgument("embedding does not fit the target register");
  }
  PauliString out(n_total);
  std::copy(ops_.begin(), ops_.end(), out.ops_.begin() + static_cast<std::ptrdiff_t>(offset));
  return out;
}

std::string PauliString::to_string() const {
  std::string s;
  s.reserve(ops_.size());
  for (Pauli p : ops_) s.push_back(to_char(p));
  return s;
}

PauliHamiltonian::PauliHamiltonian(std::size_t n_qubits) : n_qubits_(n_qubits) {}

PauliHamiltonian::PauliHamiltonian(std::size_t n_qubits,
                                   std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits) {
  for (auto& t : terms) {
    if (t.string.n_qubits() != n_qubits) {
      throw InvalidArgument("term " + t.string.to_string() +
                            " does not match register size " +
                            std::to_string(n_qubits));
    }
    if (!std::isfinite(t.coeff)) throw InvalidArgument("non-finite coefficient");
    auto it = std::find_if(terms_.begin(), terms_.end(), [&](const PauliTerm& u) {
      return u.string == t.string;
    });
    if (it == terms_.end()) {
      terms_.push_back(std::move(t));
    } else {
      it->coeff += t.coeff;
    }
  }
  std::erase_if(terms_, [](const PauliTerm& t) { return t.coeff == 0.0; });
}

double PauliHamiltonian::coefficient(const PauliString& s) const {
  for (const auto& t : terms_) {
    if (t.string == s) return t.coeff;
  }
  return 0.0;
}

PauliHamiltonian PauliHamiltonian::operator+(const PauliHamiltonian& other) const {
  if (other.n_qubits_ != n_qubits_) throw InvalidArgument("register size mismatch");
  std::vector<PauliTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return PauliHamiltonian(n_qubits_, std::move(all));
}

PauliHamiltonian PauliHamiltonian::scaled(double factor) const {
  std::vector<PauliTerm> out = terms_;
  for (auto& t : out) t.coeff *= factor;
  return PauliHamiltonian(n_qubits_, std::move(out));
}

PauliHamiltonian PauliHamiltonian::embedded(std::size_t n_total,
                                            std::size_t offset) const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.coeff, t.string.embedded(n_total, offset)});
  return PauliHamiltonian(n_total, std::move(out));
}

std::string PauliHamiltonian::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    os << t.coeff << "*" << t.string.to_string();
    first = false;
  }
  return os.str();
}

KitaevParams KitaevParams::from_fermionic(std::size_t sites, double mu, double g,
                                          double delta, double V) {
  KitaevParams p;
  p.sites = sites;
  p.x = 0.5 * (g + delta);
  p.y = 0.5 * (g - delta);
  p.z = 0.25 * V;
  p.m = 0.25 * (2.0 * mu + V);
  p.mbar = 0.25 * V;
  return p;
}

KitaevParams KitaevParams::from_pauli(std::size_t sites, double m, double x,
                                      double y, double z, double mbar) {
  KitaevParams p;
  p.sites = sites;
  p.m = m;
  p.x = x;
  p.y = y;
  p.z = z;
  p.mbar = mbar;
  return p;
}

KitaevParams KitaevParams::from_pauli(std::size_t sites, double m, double x,
                                      double y, double z) {
  return from_pauli(sites, m, x, y, z, z);
}

std::optional<KitaevParams::Fermionic> KitaevParams::fermionic(double tol) const {
  if (std::abs(mbar - z) > tol) return std::nullopt;
  const double V = 4.0 * z;
  return Fermionic{2.0 * m - 0.5 * V, x + y, x - y, V};
}

PauliHamiltonian landau_zener(double a, double b) {
  return PauliHamiltonian(1, {{a, PauliString::single(1, 0, Pauli::Z)},
                              {b, PauliString::single(1, 0, Pauli::Y)}});
}

PauliHamiltonian kitaev_chain(const KitaevParams& p) {
  if (p.sites < 2) {
    throw InvalidModel("Kitaev chain needs at least 2 sites, got " +
                       std::to_string(p.sites));
  }
  const std::size_t n = p.sites;
  std::vector<PauliTerm> terms;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    terms.push_back({p.x, PauliString::pair(n, i, Pauli::X, i + 1, Pauli::X)});
    terms.push_back({p.y, PauliString::pair(n, i, Pauli::Y, i + 1, Pauli::Y)});
    terms.push_back({p.z, PauliString::pair(n, i, Pauli::Z, i + 1, Pauli::Z)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    double coeff = -p.m;
    if (i > 0 && i + 1 < n) coeff -= p.mbar;
    terms.push_back({coeff, PauliString::single(n, i, Pauli::Z)});
  }
  return PauliHamiltonian(n, std::move(terms));
}

namespace {

void check_capacity(std::size_t n) {
  if (n > kDenseQubitCap) {
    throw OracleCapacity("dense oracle limited to " + std::to_string(kDenseQubitCap) +
                         " qubits, got " + std::to_string(n));
  }
}

// P|c> = i^{ny} (-1)^{popcount(c & sign)} |c ^ flip>
void accumulate(MatrixXc& out, double coeff, const PauliString& s) {
  const std::uint64_t flip = s.flip_mask();
  const std::uint64_t sign = s.sign_mask();
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex iy = kIPow[s.y_count() % 4];
  const auto dim = static_cast<std::uint64_t>(out.rows());
  for (std::uint64_t c = 0; c < dim; ++c) {
    const double sgn = (std::popcount(c & sign) & 1) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(c ^ flip), static_cast<Eigen::Index>(c)) += coeff * sgn * iy;
  }
}

}  // namespace

MatrixXc to_dense(const PauliHamiltonian& h) {
  check_capacity(h.n_qubits());
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  MatrixXc out = MatrixXc::Zero(dim, dim);
  for (const auto& t : h.terms()) accumulate(out, t.coeff, t.string);
  return out;
}

MatrixXc to_dense(const PauliString& s) {
  check_capacity(s.n_qubits());
  const Eigen::Index dim = Eigen::Index{1} << s.n_qubits();
  MatrixXc out = MatrixXc::Zero(dim, dim);
  accumulate(out, 1.0, s);
  return out;
}

Eigen::VectorXd parity_diagonal(std::size_t n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::VectorXd d(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    d[k] = (std::popcount(static_cast<std::uint64_t>(k)) & 1) ? -1.0 : 1.0;
  }
  return d;
}

}  // namespace spectro
