#include "spectro/config.hpp"

#include "spectro/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace spectro {

namespace pt = boost::property_tree;

PauliHamiltonian ModelSpec::build() const {
  if (type == "landau-zener") return landau_zener(a, b);
  if (type == "kitaev") {
    try {
      return kitaev_chain(KitaevParams::from_pauli(sites, m, x, y, z, effective_mbar()));
    } catch (const InvalidModel& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("unknown model type '" + type + "'");
}

std::vector<std::string> ModelSpec::parameters() const {
  if (is_kitaev()) return {"x", "y", "z", "m", "mbar"};
  return {"a", "b"};
}

bool ModelSpec::set(const std::string& name, double value) {
  const auto names = parameters();
  if (std::find(names.begin(), names.end(), name) == names.end()) return false;
  if (name == "a") a = value;
  else if (name == "b") b = value;
  else if (name == "x") x = value;
  else if (name == "y") y = value;
  else if (name == "z") z = value;
  else if (name == "m") m = value;
  else if (name == "mbar") mbar = value;
  return true;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {start};
  std::vector<double> out(count);
  const double h = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) out[k] = start + h * static_cast<double>(k);
  out.back() = stop;
  return out;
}

namespace {

double to_number(const std::string& key, const std::string& raw) {
  std::string text = raw;
  text.erase(0, text.find_first_not_of(" \t"));
  text.erase(text.find_last_not_of(" \t") + 1);
  // Also accepts a single fraction such as 1/3.
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double num = std::stod(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(key);
      const std::string den_text = text.substr(slash + 1);
      const double den = std::stod(den_text, &used);
      if (used != den_text.size() || den == 0.0) throw std::invalid_argument(key);
      return num / den;
    }
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(key);
    if (!std::isfinite(v)) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' is not a number: '" + raw + "'");
  }
}

std::size_t to_count(const std::string& key, const std::string& raw) {
  const double v = to_number(key, raw);
  if (v < 0.0 || v != std::floor(v) || v > 9.0e15) {
    throw ConfigError("'" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& key, const std::string& raw) {
  if (raw == "true" || raw == "yes" || raw == "1") return true;
  if (raw == "false" || raw == "no" || raw == "0") return false;
  throw ConfigError("'" + key + "' must be true or false");
}

class Section {
 public:
  Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

  bool present() const { return tree_ != nullptr; }

  std::optional<std::string> raw(const std::string& key) {
    used_.insert(key);
    if (!tree_) return std::nullopt;
    const auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\x1f'));
    if (!v) return std::nullopt;
    return *v;
  }
  template <typename T, typename Conv>
  void read(const std::string& key, T& target, Conv conv) {
    if (auto v = raw(key)) target = conv(name_ + "." + key, *v);
  }
  void number(const std::string& key, double& target) { read(key, target, to_number); }
  void count(const std::string& key, std::size_t& target) { read(key, target, to_count); }
  void flag(const std::string& key, bool& target) { read(key, target, to_bool); }

  void reject_unknown() const {
    if (!tree_) return;
    for (const auto& [key, child] : *tree_) {
      if (!child.empty()) throw ConfigError("nested key '" + name_ + "." + key + "'");
      if (!used_.count(key)) throw ConfigError("unknown key '" + key + "' in [" + name_ + "]");
    }
  }

 private:
  std::string name_;
  const pt::ptree* tree_;
  std::set<std::string> used_;
};

// Either <prefix>_values = list, or <prefix>_start/_stop/_count. An empty
// prefix reads values/start/stop/count.
std::vector<double> read_axis(Section& s, const std::string& prefix, double start, double stop,
                              std::size_t count) {
  auto key = [&](const char* suffix) { return prefix.empty() ? std::string(suffix) : prefix + "_" + suffix; };
  if (auto list = s.raw(key("values"))) return parse_number_list(*list);
  s.number(key("start"), start);
  s.number(key("stop"), stop);
  s.count(key("count"), count);
  const std::string label = prefix.empty() ? "scan" : prefix;
  if (count == 0) throw ConfigError("axis '" + label + "' is empty");
  if (count > 1 && !(start < stop)) throw ConfigError("axis '" + label + "' needs start < stop");
  return linspace(start, stop, count);
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_number("list", item));
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

SweepConfig ExperimentConfig::sweep_config() const {
  SweepConfig cfg = sweep;
  cfg.hamiltonian = model.build();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (model.type != "landau-zener" && model.type != "kitaev") {
    throw ConfigError("model type must be landau-zener or kitaev");
  }
  if (sweep.shots > 0 && !seed_given) throw ConfigError("a seed is required when shots > 0");
  try {
    sweep_config().validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (scan) {
    const auto names = model.parameters();
    const bool model_param = std::find(names.begin(), names.end(), scan->parameter) != names.end();
    const bool sweep_param = scan->parameter == "c" || scan->parameter == "t" || scan->parameter == "dt";
    if (!model_param && !sweep_param) {
      throw ConfigError("scan parameter '" + scan->parameter + "' does not exist for model " +
                        model.type);
    }
    if (scan->values.empty()) throw ConfigError("scan axis is empty");
  }
  if (map) {
    if (!model.is_kitaev()) throw ConfigError("[map] requires the kitaev model");
    if (map->mode != "exact" && map->mode != "spectroscopic" && map->mode != "both") {
      throw ConfigError("map mode must be exact, spectroscopic or both");
    }
    for (std::size_t L : map->sites) {
      if (L < 2 || L > kDenseQubitCap) throw ConfigError("map sites must lie in [2, 14]");
    }
    if (map->m_axis.empty() || map->y_axis.empty()) throw ConfigError("map axes are empty");
  }
  for (double dt : oracle.convergence_dts) {
    if (!(dt > 0.0)) throw ConfigError("convergence dts must be positive");
  }
  if (oracle.convergence_dts.size() < 2) throw ConfigError("convergence needs at least two dts");
  if (!(oracle.convergence_t > 0.0)) throw ConfigError("convergence_t must be positive");
  if (resources && resources->precision_qubits < 1) {
    throw ConfigError("precision_qubits must be at least 1");
  }
}

ExperimentConfig ExperimentConfig::parse(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.message());
  }
  static const std::set<std::string> known{"model", "sweep", "scan", "map", "oracle",
                                           "resources", "output"};
  for (const auto& [name, child] : tree) {
    if (!known.count(name)) throw ConfigError("unknown section [" + name + "]");
    if (child.empty()) throw ConfigError("key '" + name + "' outside any section");
  }
  auto section = [&](const std::string& name) {
    const auto it = tree.find(name);
    return Section(name, it == tree.not_found() ? nullptr : &it->second);
  };

  ExperimentConfig cfg;

  Section model = section("model");
  if (auto v = model.raw("type")) cfg.model.type = *v;
  model.number("a", cfg.model.a);
  model.number("b", cfg.model.b);
  model.count("sites", cfg.model.sites);
  model.number("x", cfg.model.x);
  model.number("y", cfg.model.y);
  model.number("z", cfg.model.z);
  model.number("m", cfg.model.m);
  if (auto v = model.raw("mbar")) cfg.model.mbar = to_number("model.mbar", *v);
  std::optional<double> fermionic[4];
  const char* fermionic_keys[4] = {"mu", "g", "delta", "V"};
  for (int k = 0; k < 4; ++k) {
    if (auto v = model.raw(fermionic_keys[k])) {
      fermionic[k] = to_number(std::string("model.") + fermionic_keys[k], *v);
    }
  }
  const int n_fermionic = static_cast<int>(std::count_if(
      std::begin(fermionic), std::end(fermionic), [](const auto& o) { return o.has_value(); }));
  if (n_fermionic > 0) {
    if (n_fermionic != 4) throw ConfigError("fermionic couplings need all of mu, g, delta, V");
    const auto p = KitaevParams::from_fermionic(cfg.model.sites, *fermionic[0], *fermionic[1],
                                                *fermionic[2], *fermionic[3]);
    cfg.model.x = p.x;
    cfg.model.y = p.y;
    cfg.model.z = p.z;
    cfg.model.m = p.m;
    cfg.model.mbar = p.mbar;
  }
  model.reject_unknown();

  Section sweep = section("sweep");
  SweepConfig& sc = cfg.sweep;
  sweep.number("omega_start", sc.grid.start);
  sweep.number("omega_stop", sc.grid.stop);
  sweep.count("omega_count", sc.grid.count);
  sweep.number("c", sc.c);
  sweep.number("t", sc.t);
  sweep.number("dt", sc.dt);
  std::size_t order = static_cast<std::size_t>(sc.order);
  sweep.count("order", order);
  sc.order = static_cast<int>(std::min<std::size_t>(order, 3));
  sweep.count("probed", sc.probed);
  if (auto v = sweep.raw("initial")) {
    try {
      sc.initial = InitialState::parse(*v);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  sweep.count("shots", sc.shots);
  if (auto v = sweep.raw("seed")) {
    sc.seed = to_count("sweep.seed", *v);
    cfg.seed_given = true;
  }
  sweep.number("noise", sc.noise);
  sweep.count("trajectories", sc.trajectories);
  sweep.count("expected_dips", sc.expected_dips);
  sweep.count("workers", sc.workers);
  sweep.reject_unknown();

  Section scan = section("scan");
  if (scan.present()) {
    ScanSpec s;
    if (auto v = scan.raw("parameter")) s.parameter = *v;
    else throw ConfigError("[scan] needs 'parameter'");
    s.values = read_axis(scan, "", 0.0, 1.0, 1);
    s.track = s.parameter == "y";
    scan.flag("track", s.track);
    cfg.scan = s;
  }
  scan.reject_unknown();

  Section map = section("map");
  if (map.present()) {
    MapSpec s;
    if (auto v = map.raw("mode")) s.mode = *v;
    if (auto v = map.raw("sites")) {
      s.sites.clear();
      for (double L : parse_number_list(*v)) {
        if (L < 0 || L != std::floor(L)) throw ConfigError("map sites must be integers");
        s.sites.push_back(static_cast<std::size_t>(L));
      }
    } else {
      s.sites = {cfg.model.sites};
    }
    s.m_axis = read_axis(map, "m", -2.0, 2.0, 21);
    s.y_axis = read_axis(map, "y", 0.2, 1.8, 21);
    map.flag("filter", s.filter);
    map.flag("fit", s.fit);
    map.number("fit_y_min", s.fit_y_min);
    map.number("fit_y_max", s.fit_y_max);
    map.flag("write_sweeps", s.write_sweeps);
    if (auto v = map.raw("cut_y")) s.cut_y = to_number("map.cut_y", *v);
    s.cut_m_axis = read_axis(map, "cut_m", -4.0, 4.0, 1601);
    cfg.map = s;
  }
  map.reject_unknown();

  Section oracle = section("oracle");
  oracle.flag("compare", cfg.oracle.compare);
  oracle.number("convergence_t", cfg.oracle.convergence_t);
  oracle.number("convergence_omega", cfg.oracle.convergence_omega);
  if (auto v = oracle.raw("convergence_dts")) cfg.oracle.convergence_dts = parse_number_list(*v);
  oracle.reject_unknown();

  Section res = section("resources");
  if (res.present()) {
    ResourceSpec s;
    if (auto v = res.raw("error_file")) s.error_file = base_dir / *v;
    else throw ConfigError("[resources] needs 'error_file'");
    res.count("precision_qubits", s.precision_qubits);
    cfg.resources = s;
  }
  res.reject_unknown();

  Section out = section("output");
  if (auto v = out.raw("dir")) cfg.output_dir = *v;
  out.reject_unknown();

  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  return parse(in, path.parent_path());
}

}  // namespace spectro
