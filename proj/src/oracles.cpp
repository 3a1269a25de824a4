#include "spectro/oracles.hpp"

#include "spectro/error.hpp"

#include <algorithm>
#include <sstream>

namespace spectro {

Complex amplitude_A(const TwoLevelParams& p) {
  return {0.0, amplitude_A_im(p.omega, p.d, p.c, p.t)};
}

Complex amplitude_B(const TwoLevelParams& p) {
  return {0.0, amplitude_A_im(-p.omega, p.d, p.c, p.t)};
}

double two_level_flip_probability(const TwoLevelParams& p, int system_bit) {
  if (system_bit != 0 && system_bit != 1) throw InvalidArgument("system bit must be 0 or 1");
  return std::norm(system_bit == 0 ? amplitude_A(p) : amplitude_B(p));
}

double two_level_z0(const TwoLevelParams& p, double weight_lower, double weight_upper) {
  return 1.0 - 2.0 * (weight_upper * std::norm(amplitude_A(p)) +
                      weight_lower * std::norm(amplitude_B(p)));
}

double pole_guard(double c) { return std::max(5.0 * std::abs(c), 1e-6); }

double perturbative_z0(const Spectrum& s, const VectorXc& alpha, double c, double t, double omega,
                       std::size_t probed) {
  if (static_cast<std::size_t>(alpha.size()) != s.size()) {
    throw InvalidArgument("alpha length does not match the spectrum");
  }
  const std::size_t dim = s.size();
  const double guard = pole_guard(c);
  MatrixXc chi(dim, dim);
  for (std::size_t m = 0; m < dim; ++m) {
    for (std::size_t n = 0; n < dim; ++n) {
      chi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) = chi_element(s, m, n, probed);
    }
  }
  for (std::size_t m = 0; m < dim; ++m) {
    for (std::size_t n = 0; n < dim; ++n) {
      const auto mi = static_cast<Eigen::Index>(m);
      const auto ni = static_cast<Eigen::Index>(n);
      if (std::abs(alpha[ni] * chi(mi, ni)) <= 1e-12) continue;
      const double gap = s.energies[mi] - s.energies[ni];
      if (std::abs(gap + omega) < guard || std::abs(gap - omega) < guard) {
        std::ostringstream msg;
        msg << "omega = " << omega << " within " << guard << " of the pole of [" << n << ","
            << m << "]";
        throw PoleProximity(msg.str());
      }
    }
  }

  double flip = 0.0;
  for (std::size_t m = 0; m < dim; ++m) {
    const auto mi = static_cast<Eigen::Index>(m);
    const double e1m = 0.5 * omega + s.energies[mi];
    Complex amp = 0.0;
    for (std::size_t n = 0; n < dim; ++n) {
      const auto ni = static_cast<Eigen::Index>(n);
      const Complex w = alpha[ni] * chi(mi, ni);
      if (std::abs(w) <= 1e-12) continue;
      const double e0n = -0.5 * omega + s.energies[ni];
      amp += w * (std::exp(Complex(0.0, -e0n * t)) - std::exp(Complex(0.0, -e1m * t))) /
             (e1m - e0n);
    }
    flip += std::norm(amp);
  }
  return 1.0 - 2.0 * c * c * flip;
}

std::vector<double> expected_resonances(const Spectrum& s, const VectorXc& alpha,
                                        std::size_t probed, double tol) {
  if (static_cast<std::size_t>(alpha.size()) != s.size()) {
    throw InvalidArgument("alpha length does not match the spectrum");
  }
  std::vector<double> out;
  for (std::size_t n = 0; n < s.size(); ++n) {
    const Complex an = alpha[static_cast<Eigen::Index>(n)];
    if (std::abs(an) <= tol) continue;
    for (std::size_t m = 0; m < s.size(); ++m) {
      if (std::abs(an * chi_element(s, m, n, probed)) <= tol) continue;
      out.push_back(s.energies[static_cast<Eigen::Index>(n)] - s.energies[static_cast<Eigen::Index>(m)]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
            out.end());
  return out;
}

std::vector<std::size_t> initial_support(const VectorXc& alpha, double tol) {
  std::vector<std::size_t> out;
  for (Eigen::Index k = 0; k < alpha.size(); ++k) {
    if (std::abs(alpha[k]) > tol) out.push_back(static_cast<std::size_t>(k));
  }
  return out;
}

bool zero_dip_expected(const Spectrum& s, std::size_t probed,
                       const std::vector<std::size_t>& support) {
  return std::any_of(support.begin(), support.end(), [&](std::size_t n) {
    return std::abs(chi_element(s, n, n, probed)) > 1e-10;
  });
}

}  // namespace spectro
