#pragma once

#include "spectro/spectrum.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace spectro {

/// Two-level system H_0 = d/2 Z_1 coupled to the probe with strength c for a
/// time t at probe energy omega.
struct TwoLevelParams {
  double d = 0.0;
  double c = 0.0;
  double t = 0.0;
  double omega = 0.0;
};

/// Imaginary part of A(omega, d); A itself is purely imaginary:
///   A = i 2c / sqrt(4c^2 + (d - omega)^2) * sin(t/2 sqrt(4c^2 + (d - omega)^2)).
/// Templated so automatic differentiation can run through it.
template <typename T>
T amplitude_A_im(const T& omega, const T& d, double c, double t) {
  using std::sin;
  using std::sqrt;
  const T detuning = d - omega;
  const T root = sqrt(4.0 * c * c + detuning * detuning);
  if (root == 0.0) return T(c * t);
  return (2.0 * c) * sin(0.5 * t * root) / root;
}

Complex amplitude_A(const TwoLevelParams& p);
/// B(omega, d) = A(-omega, d).
Complex amplitude_B(const TwoLevelParams& p);

/// Probe-flip probability of the exact two-level problem when the system
/// starts in |system_bit>: |A|^2 for |0> (energy +d/2), |B|^2 for |1>.
double two_level_flip_probability(const TwoLevelParams& p, int system_bit);

/// <Z_0> of the two-level closed form for a system whose eigenbasis weights
/// are |alpha_lower|^2 and |alpha_upper|^2, with d = E_upper - E_lower.
double two_level_z0(const TwoLevelParams& p, double weight_lower, double weight_upper);

/// Guard band around the first-order poles.
double pole_guard(double c);

/// First-order perturbative <Z_0>(omega):
///   1 - 2 c^2 sum_m | sum_n alpha_n chi_mn (e^{-i E0n t} - e^{-i E1m t}) / (E1m - E0n) |^2
/// with E0n = -omega/2 + E_n and E1m = omega/2 + E_m. Throws PoleProximity
/// when omega lies within pole_guard(c) of +-(E_m - E_n) for any pair that
/// carries weight.
double perturbative_z0(const Spectrum& s, const VectorXc& alpha, double c, double t, double omega,
                       std::size_t probed = 1);

/// Probe energies omega = E_n - E_m at which a flip out of a populated
/// eigenstate n into m is resonant (|alpha_n chi_mn| above `tol`), sorted
/// and with duplicates within 1e-9 merged. Includes 0 when chi_nn != 0.
std::vector<double> expected_resonances(const Spectrum& s, const VectorXc& alpha,
                                        std::size_t probed = 1, double tol = 1e-10);

/// Eigen-indices n with |alpha_n| above `tol`.
std::vector<std::size_t> initial_support(const VectorXc& alpha, double tol = 1e-10);

/// True iff chi_nn != 0 (above 1e-10) for some n in `support`, i.e. a dip
/// at omega = 0 is expected.
bool zero_dip_expected(const Spectrum& s, std::size_t probed,
                       const std::vector<std::size_t>& support);

}  // namespace spectro
