#pragma once

#include "spectro/pauli.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spectro {

/// `count` uniformly spaced points from `start` to `stop` inclusive.
struct OmegaGrid {
  double start = -4.0;
  double stop = 4.0;
  std::size_t count = 101;

  std::vector<double> values() const;
  double step() const;
};

/// Initial system state: a computational basis index over the system
/// register, or an exact eigenstate of the system Hamiltonian.
struct InitialState {
  enum class Kind { Basis, Eigenstate };
  Kind kind = Kind::Basis;
  std::uint64_t index = 0;

  /// "basis:<k>" or "eigen:<k>".
  static InitialState parse(const std::string& text);
  std::string to_string() const;
};

struct SweepConfig {
  PauliHamiltonian hamiltonian;
  OmegaGrid grid;
  double c = 0.1;
  double t = 10.0;
  double dt = 1.0 / 3.0;
  int order = 1;
  std::size_t probed = 1;
  InitialState initial;
  std::size_t shots = 0;  ///< 0 selects the exact expectation
  std::uint64_t seed = 0;
  double noise = 0.0;     ///< depolarising probability per multi-qubit gate
  std::size_t trajectories = 64;
  std::size_t expected_dips = 2;
  std::size_t workers = 0;  ///< 0 uses the hardware concurrency

  /// Throws InvalidArgument on an unusable configuration.
  void validate() const;
};

enum class DipModel { Single, Double };

const char* to_string(DipModel m);

struct DipFit {
  double center = 0.0;       ///< fitted omega*
  double depth = 0.0;        ///< lower side maximum minus the dip minimum
  double fwhm_left = 0.0;    ///< omega^L
  double fwhm_right = 0.0;   ///< omega^R
  double residual = 0.0;     ///< RMS residual of the fit
  DipModel model = DipModel::Single;
  bool converged = true;     ///< false: center is the raw minimum fallback
  bool open_width = false;   ///< a half-level crossing was not bracketed

  double fwhm() const { return fwhm_right - fwhm_left; }
  double hwhm() const { return 0.5 * fwhm(); }
};

struct SweepResult {
  std::vector<double> omegas;
  std::vector<double> z0;
  std::vector<double> z0_smoothed;
  std::vector<DipFit> dips;
  SweepConfig config;
};

/// The system-register vector selected by cfg.initial.
VectorXc initial_system_state(const SweepConfig& cfg);

/// Runs one resonance circuit per grid point (in parallel) and then the
/// extraction pipeline (smooth, find_minima, fit_dips, fwhm).
SweepResult run_sweep(const SweepConfig& cfg);

/// Only the <Z_0> samples, without extraction.
std::vector<double> sweep_values(const SweepConfig& cfg);

/// Re-runs the extraction pipeline on `result.z0`.
void analyze(SweepResult& result);

/// Centered moving average over the point and its four nearest neighbours,
/// with windows truncated at the edges.
std::vector<double> smooth(const std::vector<double>& values);

/// Indices of interior local minima of `smoothed` at least `3 sigma` below
/// the median of the surrounding +-10 points.
std::vector<std::size_t> find_minima(const std::vector<double>& smoothed, double sigma);

/// Noise scale used by the depth threshold: 1/sqrt(shots), or 0.01 in exact mode.
double shot_sigma(std::size_t shots);

/// Least-squares dip fits b - 2 s |A(omega, d)|^2 (single) or
/// b - 2 s |A(omega, d1) + A(omega, d2)|^2 (double) around each candidate.
/// A lone candidate with expected_dips >= 2 uses the double model on the 20
/// nearest points; otherwise each candidate gets the single model on its 10
/// nearest points.
std::vector<DipFit> fit_dips(const std::vector<double>& omegas, const std::vector<double>& z0,
                             const std::vector<std::size_t>& candidates, double c, double t,
                             std::size_t expected_dips);

/// Fills depth, fwhm_left/right and open_width of `dip` from `values`,
/// anchored on the local minimum of `values` nearest dip.center.
void measure_width(const std::vector<double>& omegas, const std::vector<double>& values,
                   DipFit& dip);

/// Width omega^R - omega^L of the dip nearest `center`.
double fwhm(const std::vector<double>& omegas, const std::vector<double>& values, double center);

/// sqrt(mean((fitted_i - exact_i)^2)).
double rms_vs_exact(const std::vector<double>& fitted, const std::vector<double>& exact);

struct TrackPoint {
  double center = 0.0;
  bool gap = false;  ///< no minimum in this sweep; center carried over
};

/// Greedy nearest-center chaining across an ordered family of sweeps, each
/// given by its list of dip centers. Ties go to the smaller |omega|.
std::vector<TrackPoint> track_dip(const std::vector<std::vector<double>>& centers, double start);

/// Centers of a sweep's fitted dips.
std::vector<double> dip_centers(const SweepResult& r);

/// Depth of a dip at omega = 0: if a local minimum of `values` lies within
/// `window` of 0, the lower of the first local maxima on either side minus
/// that minimum; otherwise 0.
double zero_dip_depth(const std::vector<double>& omegas, const std::vector<double>& values,
                      double window = 0.25);

/// omega,z0,z0_smoothed with round-trip precision.
void write_sweep_csv(std::ostream& out, const SweepResult& r);
/// Minima, fits and widths as JSON text.
std::string sweep_summary_json(const SweepResult& r, const std::vector<double>& exact = {});

}  // namespace spectro
