#include "spectro/commands.hpp"

#include "spectro/error.hpp"
#include "spectro/io.hpp"
#include "spectro/kitaev.hpp"
#include "spectro/oracles.hpp"
#include "spectro/resources.hpp"
#include "spectro/spectrum.hpp"
#include "spectro/statevector.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace spectro {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string numbered(const std::string& stem, std::size_t k, const std::string& ext) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", k);
  return stem + "_" + buf + ext;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream out;
  write_sweep_csv(out, r);
  return out.str();
}

// Resonances the initial state can drive, from the exact spectrum.
std::vector<double> expected_for(const SweepConfig& sc) {
  if (sc.hamiltonian.n_qubits() > kDenseQubitCap) return {};
  const Spectrum s = exact_spectrum(sc.hamiltonian);
  const VectorXc alpha = eigenbasis_amplitudes(s, initial_system_state(sc));
  return expected_resonances(s, alpha, sc.probed);
}

double nearest(const std::vector<double>& options, double x) {
  double best = kNaN;
  for (double o : options) {
    if (std::isnan(best) || std::abs(o - x) < std::abs(best - x)) best = o;
  }
  return best;
}

void apply_scan_value(ExperimentConfig& cfg, const std::string& name, double v) {
  if (cfg.model.set(name, v)) return;
  if (name == "c") cfg.sweep.c = v;
  else if (name == "t") cfg.sweep.t = v;
  else if (name == "dt") cfg.sweep.dt = v;
  else throw ConfigError("unknown scan parameter '" + name + "'");
}

bool symmetric_axis(const std::vector<double>& axis) {
  for (double m : axis) {
    bool found = false;
    for (double n : axis) found = found || std::abs(m + n) <= 1e-12;
    if (!found) return false;
  }
  return true;
}

void write(FileList& files, const fs::path& path, const std::string& text) {
  io::write_text(path, text);
  files.push_back(path);
}

}  // namespace

FileList cmd_sweep(const ExperimentConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  const SweepConfig sc = cfg.sweep_config();
  const SweepResult r = run_sweep(sc);
  FileList files;
  write(files, out_dir / "sweep.csv", sweep_csv(r));
  write(files, out_dir / "sweep.json", sweep_summary_json(r, expected_for(sc)));
  return files;
}

FileList cmd_scan(const ExperimentConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  if (!cfg.scan) throw ConfigError("scan needs a [scan] section");
  const ScanSpec& scan = *cfg.scan;
  for (double v : scan.values) {
    ExperimentConfig local = cfg;
    apply_scan_value(local, scan.parameter, v);
    local.scan.reset();
    local.validate();
  }

  FileList files;
  std::vector<SweepResult> results;
  std::vector<std::vector<double>> expected;
  for (std::size_t k = 0; k < scan.values.size(); ++k) {
    ExperimentConfig local = cfg;
    apply_scan_value(local, scan.parameter, scan.values[k]);
    const SweepConfig sc = local.sweep_config();
    results.push_back(run_sweep(sc));
    expected.push_back(expected_for(sc));
    write(files, out_dir / numbered("sweep", k, ".csv"), sweep_csv(results.back()));
  }

  std::string minima = "parameter,value,omega,depth,fwhm,hwhm,model,converged,open_width\n";
  json per_value = json::array();
  for (std::size_t k = 0; k < results.size(); ++k) {
    for (const auto& d : results[k].dips) {
      minima += scan.parameter + "," + io::csv_row({scan.values[k], d.center, d.depth, d.fwhm(), d.hwhm()}) +
                "," + to_string(d.model) + "," + (d.converged ? "true" : "false") + "," +
                (d.open_width ? "true" : "false") + "\n";
    }
    per_value.push_back({{"value", scan.values[k]},
                         {"dips", dip_centers(results[k])},
                         {"expected", expected[k]}});
  }
  write(files, out_dir / "minima.csv", minima);
  write(files, out_dir / "scan.json",
        json({{"parameter", scan.parameter}, {"values", scan.values}, {"sweeps", per_value}}).dump(2) + "\n");

  if (scan.track) {
    std::vector<std::vector<double>> centers;
    for (const auto& r : results) centers.push_back(dip_centers(r));
    const auto path = track_dip(centers, 0.0);
    json points = json::array();
    std::vector<double> fitted, exact;
    double width_sum = 0.0;
    for (std::size_t k = 0; k < path.size(); ++k) {
      const double ref = nearest(expected[k], path[k].center);
      double width = kNaN;
      if (!path[k].gap) {
        for (const auto& d : results[k].dips) {
          if (d.center == path[k].center) width = d.fwhm();
        }
        if (!std::isnan(ref)) {
          fitted.push_back(path[k].center);
          exact.push_back(ref);
        }
        if (!std::isnan(width)) width_sum += width;
      }
      points.push_back({{"value", scan.values[k]},
                        {"center", path[k].center},
                        {"gap", path[k].gap},
                        {"expected", std::isnan(ref) ? json(nullptr) : json(ref)},
                        {"fwhm", std::isnan(width) ? json(nullptr) : json(width)}});
    }
    json doc = {{"parameter", scan.parameter}, {"start", 0.0}, {"path", points}};
    doc["rms_vs_exact"] = fitted.empty() ? json(nullptr) : json(rms_vs_exact(fitted, exact));
    doc["mean_fwhm"] = fitted.empty() ? json(nullptr) : json(width_sum / static_cast<double>(fitted.size()));
    write(files, out_dir / "track.json", doc.dump(2) + "\n");
  }
  return files;
}

FileList cmd_phase_map(const ExperimentConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  if (!cfg.map) throw ConfigError("phase-map needs a [map] section");
  const MapSpec& spec = *cfg.map;
  const bool exact = spec.mode == "exact" || spec.mode == "both";
  const bool spectro = spec.mode == "spectroscopic" || spec.mode == "both";
  if (spectro && spec.filter && !symmetric_axis(spec.m_axis)) {
    throw ConfigError("the m-symmetry filter needs an m axis symmetric about 0");
  }
  const double x = cfg.model.x;
  const double z = cfg.model.z;
  const double mbar = cfg.model.effective_mbar();
  const SweepConfig sweep = cfg.sweep_config();

  FileList files;
  auto emit_map = [&](const GapMap& map, const std::string& stem) {
    write(files, out_dir / (stem + ".csv"), io::matrix_csv("y\\m", map.y_axis, map.m_axis, map.gap));
    write(files, out_dir / (stem + "_signed.csv"),
          io::matrix_csv("y\\m", map.y_axis, map.m_axis, map.signed_gap));
    write(files, out_dir / (stem + ".json"), gap_map_json(map));
  };
  auto emit_fit = [&](const GapMap& map, const std::string& stem) {
    if (!spec.fit) return;
    try {
      const BoundaryFit fit = fit_boundary_z(map, x, spec.fit_y_min, spec.fit_y_max);
      write(files, out_dir / (stem + ".json"), boundary_fit_json(fit, x));
    } catch (const InvalidArgument& e) {
      write(files, out_dir / (stem + ".json"), json({{"error", e.what()}}).dump(2) + "\n");
    }
  };

  json closings = json::object();
  for (std::size_t L : spec.sites) {
    const std::string tag = "L" + std::to_string(L);
    if (exact) {
      const GapMap map = gap_map_exact(spec.m_axis, spec.y_axis, x, z, mbar, L, sweep.workers);
      emit_map(map, "exact_" + tag);
      if (L == 2) emit_fit(map, "boundary_exact_" + tag);
      if (spec.cut_y) {
        const GapMap cut = gap_map_exact(spec.cut_m_axis, {*spec.cut_y}, x, z, mbar, L, sweep.workers);
        std::vector<double> row(cut.m_axis.size());
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = cut.signed_gap(0, static_cast<Eigen::Index>(j));
        closings[tag] = {{"y", *spec.cut_y}, {"closings", count_closings(row)}};
      }
    }
    if (spectro) {
      std::vector<SweepResult> sweeps;
      const GapMap map = gap_map_spectroscopic(spec.m_axis, spec.y_axis, x, z, mbar, L, sweep,
                                               spec.write_sweeps ? &sweeps : nullptr);
      emit_map(map, "spectroscopic_" + tag);
      if (spec.write_sweeps) {
        for (std::size_t r = 0; r < spec.y_axis.size(); ++r) {
          for (std::size_t c = 0; c < spec.m_axis.size(); ++c) {
            const SweepResult& s = sweeps[r * spec.m_axis.size() + c];
            const std::string stem = "sweeps_" + tag + "/" + numbered("y", r, "") + numbered("_m", c, "");
            write(files, out_dir / (stem + ".csv"), sweep_csv(s));
            write(files, out_dir / (stem + ".json"), sweep_summary_json(s, expected_for(s.config)));
          }
        }
      }
      if (spec.filter) {
        const auto [plus, minus] = split_by_m_sign(map);
        const GapMap filtered = m_symmetry_filter(plus, minus);
        emit_map(filtered, "filtered_" + tag);
        if (L == 2) emit_fit(filtered, "boundary_spectroscopic_" + tag);
      } else if (L == 2) {
        emit_fit(map, "boundary_spectroscopic_" + tag);
      }
    }
  }
  if (!closings.empty()) write(files, out_dir / "closings.json", closings.dump(2) + "\n");
  return files;
}

FileList cmd_oracle(const ExperimentConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  const SweepConfig sc = cfg.sweep_config();
  const PauliHamiltonian& h = sc.hamiltonian;
  if (h.n_qubits() + 1 > kDenseQubitCap) throw ConfigError("oracle comparison exceeds the dense cap");
  const VectorXc system = initial_system_state(sc);
  const Spectrum s = exact_spectrum(h);
  const VectorXc alpha = eigenbasis_amplitudes(s, system);
  const TrotterSchedule sched = trotter_schedule(sc.t, sc.dt);

  FileList files;
  json summary = json::object();
  if (cfg.oracle.compare) {
    SweepConfig noiseless = sc;
    noiseless.shots = 0;
    noiseless.noise = 0.0;
    const std::vector<double> sim = sweep_values(noiseless);
    const std::vector<double> omegas = sc.grid.values();
    std::string csv = "omega,sim,exact,perturbative,two_level\n";
    double max_sim_exact = 0.0;
    double max_pert_exact = 0.0;
    double max_two_level_exact = 0.0;
    for (std::size_t k = 0; k < omegas.size(); ++k) {
      const double w = omegas[k];
      const double ex = exact_resonance_z0(h, w, sc.c, sched.dt * static_cast<double>(sched.steps),
                                           system, sc.probed);
      double pert = kNaN;
      try {
        pert = perturbative_z0(s, alpha, sc.c, sc.t, w, sc.probed);
        max_pert_exact = std::max(max_pert_exact, std::abs(pert - ex));
      } catch (const PoleProximity&) {
      }
      double two = kNaN;
      if (h.n_qubits() == 1) {
        const TwoLevelParams p{s.energies[1] - s.energies[0], sc.c, sc.t, w};
        two = two_level_z0(p, std::norm(alpha[0]), std::norm(alpha[1]));
        max_two_level_exact = std::max(max_two_level_exact, std::abs(two - ex));
      }
      max_sim_exact = std::max(max_sim_exact, std::abs(sim[k] - ex));
      csv += io::csv_row({w, sim[k], ex, pert, two}) + "\n";
    }
    write(files, out_dir / "oracle.csv", csv);
    summary["max_abs_sim_minus_exact"] = max_sim_exact;
    summary["max_abs_perturbative_minus_exact"] = max_pert_exact;
    summary["max_abs_two_level_minus_exact"] =
        h.n_qubits() == 1 ? json(max_two_level_exact) : json(nullptr);
  }

  json conv = json::array();
  for (int order : {1, 2}) {
    const ConvergenceSeries series =
        trotter_convergence(h, cfg.oracle.convergence_omega, sc.c, cfg.oracle.convergence_t, order,
                            cfg.oracle.convergence_dts, system, sc.probed);
    conv.push_back({{"order", order},
                    {"dts", series.dts},
                    {"errors", series.errors},
                    {"slope", series.slope}});
  }
  summary["convergence"] = {{"t", cfg.oracle.convergence_t},
                            {"omega", cfg.oracle.convergence_omega},
                            {"c", sc.c},
                            {"series", conv}};
  write(files, out_dir / "oracle.json", summary.dump(2) + "\n");
  return files;
}

FileList cmd_resources(const ExperimentConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  if (!cfg.resources) throw ConfigError("resources needs a [resources] section");
  const GateErrorModel model = GateErrorModel::load(cfg.resources->error_file);
  const SweepConfig sc = cfg.sweep_config();
  const TrotterSchedule sched = trotter_schedule(sc.t, sc.dt);
  std::vector<ResourceReport> reports;
  reports.push_back(count_qpe(sc.hamiltonian, cfg.resources->precision_qubits, sched.dt,
                              sched.steps, sc.order, Decomposition::CnotPair));
  for (Decomposition d : {Decomposition::CnotPair, Decomposition::NativeZx}) {
    reports.push_back(count_spectroscopic(sc.hamiltonian, sc.c, sched.dt, sched.steps, sc.order, d));
  }
  FileList files;
  write(files, out_dir / "resources.json", resource_report_json(reports, model));
  return files;
}

FileList run_command(const std::string& name, const ExperimentConfig& cfg, const fs::path& out_dir) {
  if (name == "sweep") return cmd_sweep(cfg, out_dir);
  if (name == "scan") return cmd_scan(cfg, out_dir);
  if (name == "phase-map") return cmd_phase_map(cfg, out_dir);
  if (name == "oracle") return cmd_oracle(cfg, out_dir);
  if (name == "resources") return cmd_resources(cfg, out_dir);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace spectro
