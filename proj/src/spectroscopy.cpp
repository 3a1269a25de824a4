#include "spectro/spectroscopy.hpp"

#include "spectro/circuit.hpp"
#include "spectro/error.hpp"
#include "spectro/io.hpp"
#include "spectro/oracles.hpp"
#include "spectro/parallel.hpp"
#include "spectro/spectrum.hpp"
#include "spectro/statevector.hpp"

#include <json.hpp>
#include <unsupported/Eigen/AutoDiff>
#include <unsupported/Eigen/LevenbergMarquardt>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace spectro {

std::vector<double> OmegaGrid::values() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
    return out;
  }
  const double h = step();
  for (std::size_t k = 0; k < count; ++k) out[k] = start + h * static_cast<double>(k);
  out.back() = stop;
  return out;
}

double OmegaGrid::step() const {
  return count > 1 ? (stop - start) / static_cast<double>(count - 1) : 0.0;
}

InitialState InitialState::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  InitialState s;
  if (kind == "basis") {
    s.kind = Kind::Basis;
  } else if (kind == "eigen") {
    s.kind = Kind::Eigenstate;
  } else {
    throw InvalidArgument("initial state must be basis:<k> or eigen:<k>, got '" + text + "'");
  }
  if (colon == std::string::npos) return s;
  const std::string digits = text.substr(colon + 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidArgument("bad initial state index in '" + text + "'");
  }
  s.index = std::stoull(digits);
  return s;
}

std::string InitialState::to_string() const {
  return std::string(kind == Kind::Basis ? "basis:" : "eigen:") + std::to_string(index);
}

void SweepConfig::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidArgument(msg); };
  if (hamiltonian.n_qubits() == 0) fail("the system register is empty");
  if (grid.count < 5) fail("omega grid needs at least 5 points");
  if (!std::isfinite(grid.start) || !std::isfinite(grid.stop) || !(grid.start < grid.stop)) {
    fail("omega grid requires start < stop");
  }
  if (!std::isfinite(c) || c < 0.0) fail("coupling c must be non-negative");
  if (!std::isfinite(t) || !(t > 0.0)) fail("total time t must be positive");
  if (!std::isfinite(dt) || !(dt > 0.0)) fail("dt must be positive");
  if (order != 1 && order != 2) fail("Trotter order must be 1 or 2");
  if (probed < 1 || probed > hamiltonian.n_qubits()) fail("probed qubit must be in [1, n]");
  if (initial.index >= (std::uint64_t{1} << hamiltonian.n_qubits())) {
    fail("initial state index out of range");
  }
  if (!(noise >= 0.0 && noise <= 1.0)) fail("noise must lie in [0, 1]");
  if (trajectories == 0) fail("trajectories must be positive");
  if (expected_dips == 0) fail("expected_dips must be positive");
}

const char* to_string(DipModel m) { return m == DipModel::Single ? "single" : "double"; }

namespace {

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

std::vector<std::size_t> nearest_points(const std::vector<double>& omegas, double center,
                                        std::size_t count) {
  std::vector<std::size_t> idx(omegas.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(omegas[a] - center) < std::abs(omegas[b] - center);
  });
  idx.resize(std::min(count, idx.size()));
  std::sort(idx.begin(), idx.end());
  return idx;
}

using AD = Eigen::AutoDiffScalar<Eigen::VectorXd>;

struct SingleDip {
  double c, t;
  template <typename T>
  T operator()(const std::vector<T>& p, const T& omega) const {
    using std::exp;
    const T s = 1.0 / (1.0 + exp(-p[2]));
    const T a = amplitude_A_im(omega, p[0], c, t);
    return p[1] - 2.0 * s * a * a;
  }
};

struct DoubleDip {
  double c, t;
  template <typename T>
  T operator()(const std::vector<T>& p, const T& omega) const {
    using std::exp;
    const T s = 1.0 / (1.0 + exp(-p[3]));
    const T a = amplitude_A_im(omega, p[0], c, t) + amplitude_A_im(omega, p[1], c, t);
    return p[2] - 2.0 * s * a * a;
  }
};

template <typename Model>
struct DipFunctor : Eigen::DenseFunctor<double> {
  DipFunctor(Model model, std::vector<double> w, std::vector<double> z, int n_params)
      : Eigen::DenseFunctor<double>(n_params, static_cast<int>(w.size())),
        model(model), omegas(std::move(w)), targets(std::move(z)) {}

  int operator()(const InputType& x, ValueType& f) const {
    const std::vector<double> p(x.data(), x.data() + x.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      f[static_cast<Eigen::Index>(i)] = model(p, omegas[i]) - targets[i];
    }
    return 0;
  }

  int df(const InputType& x, JacobianType& jac) const {
    const auto n = x.size();
    std::vector<AD> p;
    p.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) p.emplace_back(x[j], n, j);
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      const AD w(omegas[i], Eigen::VectorXd::Zero(n));
      jac.row(static_cast<Eigen::Index>(i)) = model(p, w).derivatives().transpose();
    }
    return 0;
  }

  Model model;
  std::vector<double> omegas;
  std::vector<double> targets;
};

struct FitOutcome {
  Eigen::VectorXd params;
  double rms = 0.0;
  bool ok = false;
};

template <typename Model>
FitOutcome least_squares(Model model, const std::vector<double>& w, const std::vector<double>& z,
                         Eigen::VectorXd start) {
  DipFunctor<Model> functor(model, w, z, static_cast<int>(start.size()));
  Eigen::LevenbergMarquardt<DipFunctor<Model>> lm(functor);
  lm.setMaxfev(2000);
  lm.setXtol(1e-12);
  lm.setFtol(1e-12);
  const auto status = lm.minimize(start);
  FitOutcome out;
  out.params = start;
  Eigen::VectorXd f(static_cast<Eigen::Index>(w.size()));
  functor(start, f);
  out.rms = std::sqrt(f.squaredNorm() / static_cast<double>(w.size()));
  out.ok = status != Eigen::LevenbergMarquardtSpace::ImproperInputParameters &&
           status != Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation &&
           start.allFinite();
  return out;
}

double initial_logit(double baseline, double minimum, double c, double t) {
  const double peak = std::pow(std::sin(c * t), 2);
  const double s = peak > 1e-6 ? (baseline - minimum) / (2.0 * peak) : 0.5;
  const double clipped = std::clamp(s, 0.02, 0.98);
  return std::log(clipped / (1.0 - clipped));
}

std::vector<double> gather(const std::vector<double>& v, const std::vector<std::size_t>& idx) {
  std::vector<double> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(v[i]);
  return out;
}

bool inside(double x, const std::vector<double>& w, double pad) {
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  return x >= *lo - pad && x <= *hi + pad;
}

}  // namespace

VectorXc initial_system_state(const SweepConfig& cfg) {
  const Eigen::Index dim = Eigen::Index{1} << cfg.hamiltonian.n_qubits();
  if (cfg.initial.kind == InitialState::Kind::Basis) {
    VectorXc v = VectorXc::Zero(dim);
    v[static_cast<Eigen::Index>(cfg.initial.index)] = 1.0;
    return v;
  }
  const Spectrum s = exact_spectrum(cfg.hamiltonian);
  return s.states.col(static_cast<Eigen::Index>(cfg.initial.index));
}

std::vector<double> sweep_values(const SweepConfig& cfg) {
  cfg.validate();
  const TrotterSchedule sched = trotter_schedule(cfg.t, cfg.dt);
  const StateVector psi0 = StateVector::probe_with_system(initial_system_state(cfg));
  const std::vector<double> omegas = cfg.grid.values();
  std::vector<double> z(omegas.size());
  parallel_for(omegas.size(), cfg.workers, [&](std::size_t k) {
    const Circuit circ = build_resonance_circuit(cfg.hamiltonian, omegas[k], cfg.c, sched.dt,
                                                 sched.steps, cfg.order, cfg.probed);
    double value = cfg.noise > 0.0
                       ? noisy_expectation_z(circ, psi0, cfg.noise, derive_seed(cfg.seed, k, 1),
                                             cfg.trajectories)
                       : expectation_z(apply(circ, psi0), 0);
    if (cfg.shots > 0) value = sample_expectation(value, cfg.shots, derive_seed(cfg.seed, k, 0));
    z[k] = value;
  });
  return z;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  SweepResult r;
  r.config = cfg;
  r.z0 = sweep_values(cfg);
  r.omegas = cfg.grid.values();
  analyze(r);
  return r;
}

void analyze(SweepResult& r) {
  r.z0_smoothed = smooth(r.z0);
  const auto candidates = find_minima(r.z0_smoothed, shot_sigma(r.config.shots));
  r.dips = fit_dips(r.omegas, r.z0, candidates, r.config.c, r.config.t, r.config.expected_dips);
  const bool exact = r.config.shots == 0 && r.config.noise == 0.0;
  for (auto& d : r.dips) measure_width(r.omegas, exact ? r.z0 : r.z0_smoothed, d);
}

std::vector<double> smooth(const std::vector<double>& values) {
  if (values.size() < 5) throw InvalidArgument("smoothing needs at least 5 values");
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  std::vector<double> out(values.size());
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, k - 2);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, k + 2);
    double acc = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) acc += values[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(k)] = acc / static_cast<double>(hi - lo + 1);
  }
  return out;
}

double shot_sigma(std::size_t shots) {
  return shots > 0 ? 1.0 / std::sqrt(static_cast<double>(shots)) : 0.01;
}

std::vector<std::size_t> find_minima(const std::vector<double>& s, double sigma) {
  std::vector<std::size_t> out;
  const std::size_t n = s.size();
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (!(s[k] < s[k - 1] && s[k] <= s[k + 1])) continue;
    const std::size_t lo = k >= 10 ? k - 10 : 0;
    const std::size_t hi = std::min(n - 1, k + 10);
    const double med = median(std::vector<double>(s.begin() + static_cast<std::ptrdiff_t>(lo),
                                                  s.begin() + static_cast<std::ptrdiff_t>(hi) + 1));
    if (s[k] <= med - 3.0 * sigma) out.push_back(k);
  }
  return out;
}

std::vector<DipFit> fit_dips(const std::vector<double>& omegas, const std::vector<double>& z0,
                             const std::vector<std::size_t>& candidates, double c, double t,
                             std::size_t expected_dips) {
  if (omegas.size() != z0.size()) throw InvalidArgument("omega and value lengths differ");
  std::vector<DipFit> fits;
  const double h = omegas.size() > 1 ? std::abs(omegas[1] - omegas[0]) : 0.0;

  auto fallback = [&](std::size_t k, DipModel model) {
    DipFit d;
    d.center = omegas[k];
    d.model = model;
    d.converged = false;
    return d;
  };

  if (candidates.size() == 1 && expected_dips >= 2) {
    const std::size_t k = candidates.front();
    const auto idx = nearest_points(omegas, omegas[k], 20);
    const auto w = gather(omegas, idx);
    const auto z = gather(z0, idx);
    const double base = *std::max_element(z.begin(), z.end());
    Eigen::VectorXd p0(4);
    p0 << omegas[k] - 2.0 * h, omegas[k] + 2.0 * h, base,
        initial_logit(base, z0[k], 2.0 * c, t);
    const FitOutcome fit = least_squares(DoubleDip{c, t}, w, z, p0);
    const bool ok = fit.ok && inside(fit.params[0], w, h) && inside(fit.params[1], w, h);
    if (!ok) {
      fits.push_back(fallback(k, DipModel::Double));
      return fits;
    }
    for (double center : {std::min(fit.params[0], fit.params[1]),
                          std::max(fit.params[0], fit.params[1])}) {
      DipFit d;
      d.center = center;
      d.model = DipModel::Double;
      d.residual = fit.rms;
      fits.push_back(d);
    }
    return fits;
  }

  for (std::size_t k : candidates) {
    const auto idx = nearest_points(omegas, omegas[k], 10);
    const auto w = gather(omegas, idx);
    const auto z = gather(z0, idx);
    const double base = *std::max_element(z.begin(), z.end());
    Eigen::VectorXd p0(3);
    p0 << omegas[k], base, initial_logit(base, z0[k], c, t);
    const FitOutcome fit = least_squares(SingleDip{c, t}, w, z, p0);
    if (!fit.ok || !inside(fit.params[0], w, h)) {
      fits.push_back(fallback(k, DipModel::Single));
      continue;
    }
    DipFit d;
    d.center = fit.params[0];
    d.residual = fit.rms;
    fits.push_back(d);
  }
  return fits;
}

void measure_width(const std::vector<double>& w, const std::vector<double>& v, DipFit& dip) {
  const std::size_t n = v.size();
  if (n < 3 || w.size() != n) throw InvalidArgument("width needs at least 3 aligned points");
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs(w[j] - dip.center) < std::abs(w[k] - dip.center)) k = j;
  }
  // Slide downhill to the local minimum.
  while (true) {
    if (k > 0 && v[k - 1] < v[k]) {
      --k;
    } else if (k + 1 < n && v[k + 1] < v[k]) {
      ++k;
    } else {
      break;
    }
  }
  std::size_t left = k;
  while (left > 0 && v[left - 1] >= v[left]) --left;
  std::size_t right = k;
  while (right + 1 < n && v[right + 1] >= v[right]) ++right;

  const double vmin = v[k];
  dip.depth = std::min(v[left], v[right]) - vmin;
  dip.open_width = left == 0 || right == n - 1 || left == k || right == k;

  auto crossing = [&](std::size_t from, std::size_t to, double level) {
    // Walk from the minimum toward the side maximum until the level is met.
    const int dir = to > from ? 1 : -1;
    std::size_t j = from;
    while (j != to) {
      const std::size_t nxt = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(j) + dir);
      if (v[nxt] >= level) {
        const double span = v[nxt] - v[j];
        const double frac = span > 0.0 ? (level - v[j]) / span : 0.0;
        return w[j] + frac * (w[nxt] - w[j]);
      }
      j = nxt;
    }
    return w[to];
  };
  double lo = crossing(k, left, 0.5 * (vmin + v[left]));
  double hi = crossing(k, right, 0.5 * (vmin + v[right]));
  dip.fwhm_left = std::min(lo, dip.center);
  dip.fwhm_right = std::max(hi, dip.center);
}

double fwhm(const std::vector<double>& omegas, const std::vector<double>& values, double center) {
  DipFit d;
  d.center = center;
  measure_width(omegas, values, d);
  return d.fwhm();
}

double rms_vs_exact(const std::vector<double>& fitted, const std::vector<double>& exact) {
  if (fitted.size() != exact.size() || fitted.empty()) {
    throw InvalidArgument("rms needs two non-empty lists of equal length");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < fitted.size(); ++i) acc += std::pow(fitted[i] - exact[i], 2);
  return std::sqrt(acc / static_cast<double>(fitted.size()));
}

std::vector<TrackPoint> track_dip(const std::vector<std::vector<double>>& centers, double start) {
  std::vector<TrackPoint> path;
  double last = start;
  for (const auto& options : centers) {
    if (options.empty()) {
      path.push_back({last, true});
      continue;
    }
    double best = options.front();
    for (double c : options) {
      const double dc = std::abs(c - last);
      const double db = std::abs(best - last);
      if (dc < db || (dc == db && std::abs(c) < std::abs(best))) best = c;
    }
    path.push_back({best, false});
    last = best;
  }
  return path;
}

std::vector<double> dip_centers(const SweepResult& r) {
  std::vector<double> out;
  out.reserve(r.dips.size());
  for (const auto& d : r.dips) out.push_back(d.center);
  return out;
}

double zero_dip_depth(const std::vector<double>& w, const std::vector<double>& v, double window) {
  const std::size_t n = v.size();
  std::size_t best = n;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (!(v[k] < v[k - 1] && v[k] <= v[k + 1]) || std::abs(w[k]) > window) continue;
    if (best == n || std::abs(w[k]) < std::abs(w[best])) best = k;
  }
  if (best == n) return 0.0;
  std::size_t left = best;
  while (left > 0 && v[left - 1] >= v[left]) --left;
  std::size_t right = best;
  while (right + 1 < n && v[right + 1] >= v[right]) ++right;
  return std::min(v[left], v[right]) - v[best];
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  out << "omega,z0,z0_smoothed\n";
  for (std::size_t k = 0; k < r.omegas.size(); ++k) {
    out << io::csv_row({r.omegas[k], r.z0[k], r.z0_smoothed[k]}) << '\n';
  }
}

std::string sweep_summary_json(const SweepResult& r, const std::vector<double>& exact) {
  using nlohmann::json;
  json dips = json::array();
  double width_sum = 0.0;
  for (const auto& d : r.dips) {
    dips.push_back({{"omega", d.center},
                    {"depth", d.depth},
                    {"fwhm", d.fwhm()},
                    {"hwhm", d.hwhm()},
                    {"fwhm_left", d.fwhm_left},
                    {"fwhm_right", d.fwhm_right},
                    {"model", to_string(d.model)},
                    {"residual", d.residual},
                    {"converged", d.converged},
                    {"open_width", d.open_width}});
    width_sum += d.fwhm();
  }
  const auto& cfg = r.config;
  const TrotterSchedule sched = trotter_schedule(cfg.t, cfg.dt);
  json doc = {
      {"config",
       {{"hamiltonian", cfg.hamiltonian.to_string()},
        {"omega_start", cfg.grid.start},
        {"omega_stop", cfg.grid.stop},
        {"omega_count", cfg.grid.count},
        {"c", cfg.c},
        {"t", cfg.t},
        {"dt", cfg.dt},
        {"steps", sched.steps},
        {"dt_used", sched.dt},
        {"order", cfg.order},
        {"probed", cfg.probed},
        {"initial", cfg.initial.to_string()},
        {"shots", cfg.shots},
        {"seed", cfg.seed},
        {"noise", cfg.noise},
        {"trajectories", cfg.trajectories},
        {"expected_dips", cfg.expected_dips}}},
      {"dips", dips},
      {"mean_fwhm", r.dips.empty() ? json(nullptr) : json(width_sum / static_cast<double>(r.dips.size()))}};
  if (!exact.empty()) {
    json pairs = json::array();
    std::vector<double> fitted;
    for (double e : exact) {
      if (r.dips.empty()) break;
      const auto best = std::min_element(r.dips.begin(), r.dips.end(), [&](const DipFit& a, const DipFit& b) {
        return std::abs(a.center - e) < std::abs(b.center - e);
      });
      fitted.push_back(best->center);
      pairs.push_back({{"exact", e}, {"fitted", best->center}});
    }
    doc["exact_pairs"] = pairs;
    doc["rms_vs_exact"] = fitted.size() == exact.size() ? json(rms_vs_exact(fitted, exact)) : json(nullptr);
  }
  return doc.dump(2) + "\n";
}

}  // namespace spectro
