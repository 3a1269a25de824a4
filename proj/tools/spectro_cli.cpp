#include "spectro/commands.hpp"
#include "spectro/error.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int report(const char* kind, const std::string& message, int code) {
  std::cerr << nlohmann::json({{"error", kind}, {"message", message}}).dump() << "\n";
  return code;
}

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> shots;
  std::optional<std::size_t> workers;
  std::optional<double> noise;
};

void add_options(CLI::App& sub, Overrides& o) {
  sub.add_option("-c,--config", o.config, "experiment file")->required();
  sub.add_option("-o,--out", o.out, "output directory (overrides [output] dir)");
  sub.add_option("--seed", o.seed, "base RNG seed");
  sub.add_option("--shots", o.shots, "shots per omega (0 = exact expectation)");
  sub.add_option("--workers", o.workers, "worker threads (0 = hardware concurrency)");
  sub.add_option("--noise", o.noise, "depolarising probability per multi-qubit gate");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum resonance spectroscopy simulator"};
  app.require_subcommand(1);
  Overrides o;
  for (const char* name : {"sweep", "scan", "phase-map", "oracle", "resources"}) {
    add_options(*app.add_subcommand(name, std::string("run the ") + name + " experiment"), o);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), kExitConfig);
  }
  const std::string command = app.get_subcommands().front()->get_name();

  spectro::ExperimentConfig cfg;
  std::filesystem::path out_dir;
  try {
    cfg = spectro::ExperimentConfig::load(o.config);
    if (o.seed) {
      cfg.sweep.seed = *o.seed;
      cfg.seed_given = true;
    }
    if (o.shots) cfg.sweep.shots = *o.shots;
    if (o.workers) cfg.sweep.workers = *o.workers;
    if (o.noise) cfg.sweep.noise = *o.noise;
    cfg.validate();
    out_dir = o.out.empty() ? cfg.output_dir : std::filesystem::path(o.out);
  } catch (const spectro::Error& e) {
    return report(e.kind(), e.what(), kExitConfig);
  }

  try {
    const auto files = spectro::run_command(command, cfg, out_dir);
    for (const auto& f : files) std::cout << f.string() << "\n";
  } catch (const spectro::ConfigError& e) {
    return report(e.kind(), e.what(), kExitConfig);
  } catch (const spectro::Error& e) {
    return report(e.kind(), e.what(), kExitRuntime);
  } catch (const std::exception& e) {
    return report("runtime", e.what(), kExitRuntime);
  }
  return 0;
}
