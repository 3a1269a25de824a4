#pragma once

#include "spectro/spectroscopy.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spectro {

/// The system model named in a config: "landau-zener" (a, b) or "kitaev"
/// (sites, x, y, z, m, mbar; or the fermionic mu, g, delta, V).
struct ModelSpec {
  std::string type = "landau-zener";
  double a = 0.6;
  double b = 0.9;
  std::size_t sites = 2;
  double x = 1.5;
  double y = 0.4;
  double z = 0.2;
  double m = 1.0;
  std::optional<double> mbar;  ///< defaults to z

  bool is_kitaev() const { return type == "kitaev"; }
  double effective_mbar() const { return mbar.value_or(z); }
  PauliHamiltonian build() const;

  /// Names a scan may vary for this model type.
  std::vector<std::string> parameters() const;
  /// Sets a model parameter; returns false for names that are not model
  /// parameters.
  bool set(const std::string& name, double value);
};

struct ScanSpec {
  std::string parameter;
  std::vector<double> values;
  bool track = false;
};

struct MapSpec {
  std::string mode = "exact";  ///< exact | spectroscopic | both
  std::vector<std::size_t> sites{2};
  std::vector<double> m_axis;
  std::vector<double> y_axis;
  bool filter = true;
  bool fit = true;
  double fit_y_min = -1e300;
  double fit_y_max = 1e300;
  bool write_sweeps = false;
  std::optional<double> cut_y;  ///< count gap closings along this y
  std::vector<double> cut_m_axis;
};

struct OracleSpec {
  bool compare = true;
  double convergence_t = 2.0;
  double convergence_omega = 0.0;
  std::vector<double> convergence_dts{0.4, 0.2, 0.1, 0.05};
};

struct ResourceSpec {
  std::filesystem::path error_file;
  std::size_t precision_qubits = 3;
};

/// A parsed experiment file. Sections: [model], [sweep], [scan], [map],
/// [oracle], [resources], [output]. Unknown keys are rejected.
struct ExperimentConfig {
  ModelSpec model;
  SweepConfig sweep;  ///< hamiltonian is rebuilt from `model` by sweep_config()
  std::optional<ScanSpec> scan;
  std::optional<MapSpec> map;
  OracleSpec oracle;
  std::optional<ResourceSpec> resources;
  std::filesystem::path output_dir = "out";
  bool seed_given = false;

  /// Sweep settings with the model's Hamiltonian filled in.
  SweepConfig sweep_config() const;
  /// Consistency checks; throws ConfigError.
  void validate() const;

  /// Relative paths inside the file resolve against `base_dir`.
  static ExperimentConfig parse(std::istream& in, const std::filesystem::path& base_dir);
  static ExperimentConfig load(const std::filesystem::path& path);
};

/// "1, 2.5, 3" -> {1, 2.5, 3}; throws ConfigError on malformed entries.
std::vector<double> parse_number_list(const std::string& text);

/// `count` points from start to stop inclusive (a single point when count = 1).
std::vector<double> linspace(double start, double stop, std::size_t count);

}  // namespace spectro
