#pragma once

#include "spectro/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace spectro {

/// Experiment runners behind the command-line subcommands. Each validates
/// the config first (throwing ConfigError before anything is written), then
/// writes its plot-ready CSV/JSON files into `out_dir` and returns their
/// paths in write order.
using FileList = std::vector<std::filesystem::path>;

FileList cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
FileList cmd_scan(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
FileList cmd_phase_map(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
FileList cmd_oracle(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
FileList cmd_resources(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Dispatch by subcommand name ("sweep", "scan", "phase-map", "oracle",
/// "resources").
FileList run_command(const std::string& name, const ExperimentConfig& cfg,
                     const std::filesystem::path& out_dir);

}  // namespace spectro
