#pragma once

#include "spectro/pauli.hpp"
#include "spectro/spectroscopy.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace spectro {

/// Closed-form levels of the two-site chain. The odd-parity sector (a) has
/// -z +- (x + y), the even sector (b) has z +- sqrt(4 m^2 + (x - y)^2).
struct TwoSiteLevels {
  double odd_minus = 0.0;
  double odd_plus = 0.0;
  double even_minus = 0.0;
  double even_plus = 0.0;

  /// All four in ascending order.
  std::array<double, 4> sorted() const;
};

TwoSiteLevels two_site_spectrum(double m, double x, double y, double z);

/// m >= 0 at which the two lowest two-site levels cross,
/// sqrt(z^2 + z (x + y) + x y); empty when the radicand is negative.
std::optional<double> zero_crossing_m(double x, double y, double z);

enum class GapSource { Exact, Spectroscopic, Filtered };

const char* to_string(GapSource s);

/// Gap over an (m, y) grid. Rows follow y_axis, columns follow m_axis.
/// NaN marks a cell without an extracted value.
struct GapMap {
  std::vector<double> m_axis;
  std::vector<double> y_axis;
  Eigen::MatrixXd gap;         ///< |E_even - E_odd| or |tracked dip center|
  Eigen::MatrixXd signed_gap;  ///< E_even - E_odd or the signed dip center
  GapSource source = GapSource::Exact;
  std::size_t sites = 2;
  double x = 0.0;
  double z = 0.0;
  double mbar = 0.0;
  /// Per cell (row-major over y then m): 'e' exact, 's' spectroscopic,
  /// '+' or '-' the side a filtered value came from, '?' missing.
  std::vector<char> provenance;

  std::size_t missing() const;
  char provenance_at(std::size_t row, std::size_t col) const {
    return provenance[row * m_axis.size() + col];
  }
};

/// Lowest even-parity minus lowest odd-parity energy of a parity-conserving
/// Hamiltonian.
double parity_gap(const PauliHamiltonian& h);

/// Exact-diagonalisation gap map of an L-site chain with fixed x, z, mbar.
GapMap gap_map_exact(const std::vector<double>& m_axis, const std::vector<double>& y_axis,
                     double x, double z, double mbar, std::size_t sites,
                     std::size_t workers = 0);

/// Spectroscopic gap map. One sweep per cell using `sweep` for everything
/// but the Hamiltonian; within each m column the dip nearest omega = 0 in
/// the first row is tracked across y. Sweeps are returned through
/// `sweeps_out` (row-major) when it is non-null.
GapMap gap_map_spectroscopic(const std::vector<double>& m_axis, const std::vector<double>& y_axis,
                             double x, double z, double mbar, std::size_t sites,
                             const SweepConfig& sweep,
                             std::vector<SweepResult>* sweeps_out = nullptr);

/// Splits a map on an m axis symmetric about 0 into the m >= 0 half and the
/// mirrored m <= 0 half (column j of the second holds -m_axis[j] of the first).
std::pair<GapMap, GapMap> split_by_m_sign(const GapMap& full);

/// Cell-wise smaller gap of a +m map and its mirrored -m map; a missing side
/// falls back to the other. Throws InvalidArgument on incongruent grids.
GapMap m_symmetry_filter(const GapMap& plus, const GapMap& minus);

struct RidgePoint {
  double y = 0.0;
  double m = 0.0;
};

struct BoundaryFit {
  double z_fit = 0.0;
  double z_true = 0.0;
  double delta_z = 0.0;
  double rms = 0.0;
  bool converged = false;
  std::vector<RidgePoint> ridge;
};

/// Per-y minimum-gap ridge over m >= 0 (parabolic sub-grid refinement, rows
/// whose minimum sits on the m-range edge skipped), then a least-squares fit
/// of zero_crossing_m(x, y, z) over z. Throws InvalidArgument when no ridge
/// point is found.
BoundaryFit fit_boundary_z(const GapMap& map, double x, double y_min, double y_max);

/// Number of sign changes along a series, ignoring NaN and exact zeros.
std::size_t count_closings(const std::vector<double>& signed_values);

std::string gap_map_json(const GapMap& map);
std::string boundary_fit_json(const BoundaryFit& fit, double x);

}  // namespace spectro
