#include "spectro/kitaev.hpp"

#include "spectro/error.hpp"
#include "spectro/parallel.hpp"
#include "spectro/spectrum.hpp"

#include <json.hpp>
#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <cmath>
#include <limits>

namespace spectro {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::array<double, 4> TwoSiteLevels::sorted() const {
  std::array<double, 4> e{odd_minus, odd_plus, even_minus, even_plus};
  std::sort(e.begin(), e.end());
  return e;
}

TwoSiteLevels two_site_spectrum(double m, double x, double y, double z) {
  const double root = std::sqrt(4.0 * m * m + (x - y) * (x - y));
  return {-z - (x + y), -z + (x + y), z - root, z + root};
}

std::optional<double> zero_crossing_m(double x, double y, double z) {
  const double radicand = z * z + z * (x + y) + x * y;
  if (radicand < 0.0) return std::nullopt;
  return std::sqrt(radicand);
}

const char* to_string(GapSource s) {
  switch (s) {
    case GapSource::Exact: return "exact-diagonalization";
    case GapSource::Spectroscopic: return "spectroscopic-sim";
    case GapSource::Filtered: return "m-symmetry-filtered";
  }
  return "unknown";
}

std::size_t GapMap::missing() const {
  return static_cast<std::size_t>(std::count(provenance.begin(), provenance.end(), '?'));
}

double parity_gap(const PauliHamiltonian& h) {
  const Spectrum s = exact_spectrum(h);
  double even = kNaN;
  double odd = kNaN;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double e = s.energies[static_cast<Eigen::Index>(k)];
    if (s.parities[k] == 1 && std::isnan(even)) even = e;
    if (s.parities[k] == -1 && std::isnan(odd)) odd = e;
  }
  if (std::isnan(even) || std::isnan(odd)) {
    throw InvalidModel("Hamiltonian does not conserve parity; no sector gap");
  }
  return even - odd;
}

namespace {

GapMap empty_map(const std::vector<double>& m_axis, const std::vector<double>& y_axis, double x,
                 double z, double mbar, std::size_t sites, GapSource source) {
  if (m_axis.empty() || y_axis.empty()) throw InvalidArgument("gap map axes must be non-empty");
  if (sites < 2) throw InvalidModel("Kitaev chain needs at least 2 sites");
  if (sites > kDenseQubitCap) throw OracleCapacity("gap map sites exceed the dense oracle cap");
  GapMap map;
  map.m_axis = m_axis;
  map.y_axis = y_axis;
  const auto rows = static_cast<Eigen::Index>(y_axis.size());
  const auto cols = static_cast<Eigen::Index>(m_axis.size());
  map.gap = Eigen::MatrixXd::Constant(rows, cols, kNaN);
  map.signed_gap = Eigen::MatrixXd::Constant(rows, cols, kNaN);
  map.source = source;
  map.sites = sites;
  map.x = x;
  map.z = z;
  map.mbar = mbar;
  map.provenance.assign(y_axis.size() * m_axis.size(), '?');
  return map;
}

}  // namespace

GapMap gap_map_exact(const std::vector<double>& m_axis, const std::vector<double>& y_axis,
                     double x, double z, double mbar, std::size_t sites, std::size_t workers) {
  GapMap map = empty_map(m_axis, y_axis, x, z, mbar, sites, GapSource::Exact);
  const std::size_t cols = m_axis.size();
  parallel_for(y_axis.size() * cols, workers, [&](std::size_t cell) {
    const std::size_t r = cell / cols;
    const std::size_t c = cell % cols;
    const auto p = KitaevParams::from_pauli(sites, m_axis[c], x, y_axis[r], z, mbar);
    const double g = parity_gap(kitaev_chain(p));
    map.signed_gap(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = g;
    map.gap(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = std::abs(g);
    map.provenance[cell] = 'e';
  });
  return map;
}

GapMap gap_map_spectroscopic(const std::vector<double>& m_axis, const std::vector<double>& y_axis,
                             double x, double z, double mbar, std::size_t sites,
                             const SweepConfig& sweep, std::vector<SweepResult>* sweeps_out) {
  GapMap map = empty_map(m_axis, y_axis, x, z, mbar, sites, GapSource::Spectroscopic);
  const std::size_t rows = y_axis.size();
  const std::size_t cols = m_axis.size();
  std::vector<SweepResult> sweeps(rows * cols);
  parallel_for(rows * cols, sweep.workers, [&](std::size_t cell) {
    SweepConfig cfg = sweep;
    cfg.hamiltonian = kitaev_chain(
        KitaevParams::from_pauli(sites, m_axis[cell % cols], x, y_axis[cell / cols], z, mbar));
    cfg.workers = 1;
    sweeps[cell] = run_sweep(cfg);
  });

  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<std::vector<double>> centers(rows);
    for (std::size_t r = 0; r < rows; ++r) centers[r] = dip_centers(sweeps[r * cols + c]);
    const auto path = track_dip(centers, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      if (path[r].gap) continue;
      map.signed_gap(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = path[r].center;
      map.gap(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = std::abs(path[r].center);
      map.provenance[r * cols + c] = 's';
    }
  }
  if (sweeps_out) *sweeps_out = std::move(sweeps);
  return map;
}

std::pair<GapMap, GapMap> split_by_m_sign(const GapMap& full) {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t j = 0; j < full.m_axis.size(); ++j) {
    if (full.m_axis[j] < 0.0) continue;
    const double target = -full.m_axis[j];
    const auto it = std::find_if(full.m_axis.begin(), full.m_axis.end(),
                                 [&](double v) { return std::abs(v - target) <= 1e-12; });
    if (it == full.m_axis.end()) {
      throw InvalidArgument("m axis is not symmetric about 0");
    }
    pos.push_back(j);
    neg.push_back(static_cast<std::size_t>(it - full.m_axis.begin()));
  }
  auto take = [&](const std::vector<std::size_t>& idx) {
    std::vector<double> axis;
    for (std::size_t j : idx) axis.push_back(full.m_axis[j]);
    GapMap half = empty_map(axis, full.y_axis, full.x, full.z, full.mbar, full.sites, full.source);
    for (std::size_t r = 0; r < full.y_axis.size(); ++r) {
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const auto R = static_cast<Eigen::Index>(r);
        half.gap(R, static_cast<Eigen::Index>(k)) = full.gap(R, static_cast<Eigen::Index>(idx[k]));
        half.signed_gap(R, static_cast<Eigen::Index>(k)) =
            full.signed_gap(R, static_cast<Eigen::Index>(idx[k]));
        half.provenance[r * idx.size() + k] = full.provenance_at(r, idx[k]);
      }
    }
    return half;
  };
  return {take(pos), take(neg)};
}

GapMap m_symmetry_filter(const GapMap& plus, const GapMap& minus) {
  if (plus.m_axis.size() != minus.m_axis.size() || plus.y_axis.size() != minus.y_axis.size()) {
    throw InvalidArgument("maps have different grid shapes");
  }
  for (std::size_t j = 0; j < plus.m_axis.size(); ++j) {
    if (std::abs(plus.m_axis[j] + minus.m_axis[j]) > 1e-12) {
      throw InvalidArgument("m axes are not mirror images");
    }
  }
  for (std::size_t r = 0; r < plus.y_axis.size(); ++r) {
    if (std::abs(plus.y_axis[r] - minus.y_axis[r]) > 1e-12) {
      throw InvalidArgument("y axes differ");
    }
  }
  GapMap out = empty_map(plus.m_axis, plus.y_axis, plus.x, plus.z, plus.mbar, plus.sites,
                         GapSource::Filtered);
  for (std::size_t r = 0; r < plus.y_axis.size(); ++r) {
    for (std::size_t c = 0; c < plus.m_axis.size(); ++c) {
      const auto R = static_cast<Eigen::Index>(r);
      const auto C = static_cast<Eigen::Index>(c);
      const double gp = plus.gap(R, C);
      const double gm = minus.gap(R, C);
      const bool use_minus = std::isnan(gp) || (!std::isnan(gm) && gm < gp);
      if (std::isnan(gp) && std::isnan(gm)) continue;
      const GapMap& src = use_minus ? minus : plus;
      out.gap(R, C) = src.gap(R, C);
      out.signed_gap(R, C) = src.signed_gap(R, C);
      out.provenance[r * plus.m_axis.size() + c] = use_minus ? '-' : '+';
    }
  }
  return out;
}

namespace {

struct BoundaryFunctor : Eigen::DenseFunctor<double> {
  BoundaryFunctor(double x, const std::vector<RidgePoint>& ridge)
      : Eigen::DenseFunctor<double>(1, static_cast<int>(ridge.size())), x(x), ridge(ridge) {}

  int operator()(const InputType& p, ValueType& f) const {
    for (std::size_t i = 0; i < ridge.size(); ++i) {
      const double y = ridge[i].y;
      const double radicand = p[0] * p[0] + p[0] * (x + y) + x * y;
      f[static_cast<Eigen::Index>(i)] = ridge[i].m - std::sqrt(std::max(0.0, radicand));
    }
    return 0;
  }

  double x;
  const std::vector<RidgePoint>& ridge;
};

}  // namespace

BoundaryFit fit_boundary_z(const GapMap& map, double x, double y_min, double y_max) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < map.m_axis.size(); ++j) {
    if (map.m_axis[j] >= 0.0) cols.push_back(j);
  }
  std::sort(cols.begin(), cols.end(),
            [&](std::size_t a, std::size_t b) { return map.m_axis[a] < map.m_axis[b]; });

  BoundaryFit fit;
  fit.z_true = map.z;
  for (std::size_t r = 0; r < map.y_axis.size(); ++r) {
    const double y = map.y_axis[r];
    if (y < y_min - 1e-12 || y > y_max + 1e-12) continue;
    const auto R = static_cast<Eigen::Index>(r);
    std::size_t best = cols.size();
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const double g = map.gap(R, static_cast<Eigen::Index>(cols[k]));
      if (std::isnan(g)) continue;
      if (best == cols.size() || g < map.gap(R, static_cast<Eigen::Index>(cols[best]))) best = k;
    }
    if (best == cols.size() || best == 0 || best + 1 == cols.size()) continue;
    const double m0 = map.m_axis[cols[best - 1]];
    const double m1 = map.m_axis[cols[best]];
    const double m2 = map.m_axis[cols[best + 1]];
    const double g0 = map.gap(R, static_cast<Eigen::Index>(cols[best - 1]));
    const double g1 = map.gap(R, static_cast<Eigen::Index>(cols[best]));
    const double g2 = map.gap(R, static_cast<Eigen::Index>(cols[best + 1]));
    double m_star = m1;
    if (std::isfinite(g0) && std::isfinite(g2)) {
      const double num = (m1 - m0) * (m1 - m0) * (g1 - g2) - (m1 - m2) * (m1 - m2) * (g1 - g0);
      const double den = (m1 - m0) * (g1 - g2) - (m1 - m2) * (g1 - g0);
      if (std::abs(den) > 1e-15) m_star = std::clamp(m1 - 0.5 * num / den, m0, m2);
    }
    fit.ridge.push_back({y, m_star});
  }
  if (fit.ridge.empty()) throw InvalidArgument("no zero-gap ridge found in the map");

  BoundaryFunctor functor(x, fit.ridge);
  Eigen::NumericalDiff<BoundaryFunctor> numeric(functor);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<BoundaryFunctor>> lm(numeric);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(1);
  const auto status = lm.minimize(p);
  fit.converged = status != Eigen::LevenbergMarquardtSpace::ImproperInputParameters &&
                  status != Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation;
  fit.z_fit = p[0];
  fit.delta_z = fit.z_fit - fit.z_true;
  Eigen::VectorXd f(static_cast<Eigen::Index>(fit.ridge.size()));
  functor(p, f);
  fit.rms = std::sqrt(f.squaredNorm() / static_cast<double>(fit.ridge.size()));
  return fit;
}

std::size_t count_closings(const std::vector<double>& v) {
  std::size_t count = 0;
  int last = 0;
  for (double x : v) {
    if (std::isnan(x) || x == 0.0) continue;
    const int sign = x > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++count;
    last = sign;
  }
  return count;
}

std::string gap_map_json(const GapMap& map) {
  using nlohmann::json;
  json prov = json::array();
  for (std::size_t r = 0; r < map.y_axis.size(); ++r) {
    prov.push_back(std::string(map.provenance.begin() + static_cast<std::ptrdiff_t>(r * map.m_axis.size()),
                               map.provenance.begin() + static_cast<std::ptrdiff_t>((r + 1) * map.m_axis.size())));
  }
  json doc = {{"source", to_string(map.source)},
              {"sites", map.sites},
              {"x", map.x},
              {"z", map.z},
              {"mbar", map.mbar},
              {"m_axis", map.m_axis},
              {"y_axis", map.y_axis},
              {"rows", "y"},
              {"cols", "m"},
              {"missing_cells", map.missing()},
              {"provenance", prov}};
  return doc.dump(2) + "\n";
}

std::string boundary_fit_json(const BoundaryFit& fit, double x) {
  using nlohmann::json;
  json ridge = json::array();
  for (const auto& p : fit.ridge) {
    const auto model = zero_crossing_m(x, p.y, fit.z_fit);
    ridge.push_back({{"y", p.y}, {"m", p.m}, {"m_fit", model ? json(*model) : json(nullptr)}});
  }
  json doc = {{"z_fit", fit.z_fit},
              {"z_true", fit.z_true},
              {"delta_z", fit.delta_z},
              {"rms", fit.rms},
              {"converged", fit.converged},
              {"ridge", ridge}};
  return doc.dump(2) + "\n";
}

}  // namespace spectro
