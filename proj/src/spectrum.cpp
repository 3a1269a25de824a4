#include "spectro/spectrum.hpp"

#include "spectro/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spectro {

namespace {

constexpr double kParityThreshold = 0.99;

void check_capacity(std::size_t n) {
  if (n > kDenseQubitCap) {
    throw OracleCapacity("dense oracle limited to " + std::to_string(kDenseQubitCap) +
                         " qubits, got " + std::to_string(n));
  }
}

void check_square(const MatrixXc& m, std::size_t n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (m.rows() != dim || m.cols() != dim) {
    throw InvalidArgument("matrix is not 2^n x 2^n for n = " + std::to_string(n_qubits));
  }
}

bool commutes_with_parity(const MatrixXc& m, const Eigen::VectorXd& parity) {
  const double tol = 1e-13 * std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (parity[i] != parity[j] && std::abs(m(i, j)) > tol) return false;
    }
  }
  return true;
}

std::vector<Eigen::Index> sector(const Eigen::VectorXd& parity, double value) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index k = 0; k < parity.size(); ++k) {
    if (parity[k] == value) idx.push_back(k);
  }
  return idx;
}

MatrixXc block(const MatrixXc& m, const std::vector<Eigen::Index>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  MatrixXc b(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) b(i, j) = m(idx[i], idx[j]);
  }
  return b;
}

struct RawDecomposition {
  Eigen::VectorXd energies;
  MatrixXc states;
};

// Runs `solve` on each parity block (or on the whole matrix) and embeds the
// block eigenvectors back into the full space.
template <typename Solve>
RawDecomposition decompose(const MatrixXc& m, std::size_t n_qubits, Solve solve) {
  const Eigen::VectorXd parity = parity_diagonal(n_qubits);
  if (!commutes_with_parity(m, parity)) return solve(m);

  RawDecomposition out;
  const Eigen::Index dim = m.rows();
  out.energies.resize(dim);
  out.states = MatrixXc::Zero(dim, dim);
  Eigen::Index col = 0;
  for (double p : {1.0, -1.0}) {
    const auto idx = sector(parity, p);
    if (idx.empty()) continue;
    const RawDecomposition part = solve(block(m, idx));
    for (Eigen::Index k = 0; k < part.energies.size(); ++k, ++col) {
      out.energies[col] = part.energies[k];
      for (std::size_t r = 0; r < idx.size(); ++r) {
        out.states(idx[r], col) = part.states(static_cast<Eigen::Index>(r), k);
      }
    }
  }
  return out;
}

Eigen::Index dominant_index(const VectorXc& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) >= peak - 1e-9) return k;
  }
  return 0;
}

Spectrum finalize(RawDecomposition raw, std::size_t n_qubits) {
  const Eigen::VectorXd parity = parity_diagonal(n_qubits);
  const auto dim = static_cast<std::size_t>(raw.energies.size());

  std::vector<int> labels(dim);
  std::vector<Eigen::Index> dominant(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    const double expect = (raw.states.col(col).cwiseAbs2().array() * parity.array()).sum();
    labels[k] = expect > kParityThreshold ? 1 : (expect < -kParityThreshold ? -1 : 0);
    dominant[k] = dominant_index(raw.states.col(col));
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw.energies[static_cast<Eigen::Index>(a)] < raw.energies[static_cast<Eigen::Index>(b)];
  });

  const double scale = std::max(1.0, raw.energies.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;
  auto tie_key = [&](std::size_t k) { return std::pair{-labels[k], dominant[k]}; };
  for (std::size_t lo = 0; lo < dim;) {
    std::size_t hi = lo + 1;
    while (hi < dim && raw.energies[static_cast<Eigen::Index>(order[hi])] -
                               raw.energies[static_cast<Eigen::Index>(order[hi - 1])] <= tol) {
      ++hi;
    }
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(lo),
                     order.begin() + static_cast<std::ptrdiff_t>(hi),
                     [&](std::size_t a, std::size_t b) { return tie_key(a) < tie_key(b); });
    lo = hi;
  }

  Spectrum s;
  s.n_qubits = n_qubits;
  s.energies.resize(static_cast<Eigen::Index>(dim));
  s.states.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  s.parities.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto src = static_cast<Eigen::Index>(order[k]);
    const auto dst = static_cast<Eigen::Index>(k);
    s.energies[dst] = raw.energies[src];
    VectorXc v = raw.states.col(src);
    const Complex lead = v[dominant[order[k]]];
    if (std::abs(lead) > 0.0) v *= std::conj(lead) / std::abs(lead);
    s.states.col(dst) = v;
    s.parities[k] = labels[order[k]];
  }
  return s;
}

}  // namespace

bool Spectrum::parity_conserving() const {
  return std::none_of(parities.begin(), parities.end(), [](int p) { return p == 0; });
}

Spectrum exact_spectrum(const PauliHamiltonian& h) {
  return exact_spectrum(to_dense(h), h.n_qubits());
}

Spectrum exact_spectrum(const MatrixXc& hermitian, std::size_t n_qubits) {
  check_capacity(n_qubits);
  check_square(hermitian, n_qubits);
  auto solve = [](const MatrixXc& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(m);
    if (es.info() != Eigen::Success) throw Error("eigen-decomposition failed");
    return RawDecomposition{es.eigenvalues(), es.eigenvectors()};
  };
  return finalize(decompose(hermitian, n_qubits, solve), n_qubits);
}

Spectrum unitary_spectrum(const MatrixXc& unitary, double dt, std::size_t n_qubits) {
  check_capacity(n_qubits);
  check_square(unitary, n_qubits);
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  auto solve = [dt](const MatrixXc& m) {
    Eigen::ComplexSchur<MatrixXc> schur(m);
    if (schur.info() != Eigen::Success) throw Error("Schur decomposition failed");
    const MatrixXc& t = schur.matrixT();
    Eigen::VectorXd quasi(t.rows());
    for (Eigen::Index k = 0; k < t.rows(); ++k) quasi[k] = -std::arg(t(k, k)) / dt;
    return RawDecomposition{quasi, schur.matrixU()};
  };
  return finalize(decompose(unitary, n_qubits, solve), n_qubits);
}

std::vector<Transition> transition_energies(const Spectrum& s) {
  std::vector<Transition> out;
  out.reserve(s.size() * s.size());
  for (std::size_t from = 0; from < s.size(); ++from) {
    for (std::size_t to = 0; to < s.size(); ++to) {
      out.push_back({from, to,
                     s.energies[static_cast<Eigen::Index>(to)] -
                         s.energies[static_cast<Eigen::Index>(from)]});
    }
  }
  return out;
}

Complex chi_element(const Spectrum& s, std::size_t m, std::size_t n, std::size_t qubit) {
  if (m >= s.size() || n >= s.size()) throw InvalidArgument("eigen index out of range");
  if (qubit < 1 || qubit > s.n_qubits) {
    throw InvalidArgument("probed qubit must be in [1, n]");
  }
  const std::uint64_t mask = std::uint64_t{1} << (qubit - 1);
  const auto vm = s.states.col(static_cast<Eigen::Index>(m));
  const auto vn = s.states.col(static_cast<Eigen::Index>(n));
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < vm.size(); ++k) {
    acc += std::conj(vm[k]) * vn[static_cast<Eigen::Index>(static_cast<std::uint64_t>(k) ^ mask)];
  }
  return acc;
}

VectorXc eigenbasis_amplitudes(const Spectrum& s, const VectorXc& system_state) {
  if (system_state.size() != s.states.rows()) {
    throw InvalidArgument("state dimension does not match spectrum");
  }
  return s.states.adjoint() * system_state;
}

}  // namespace spectro
