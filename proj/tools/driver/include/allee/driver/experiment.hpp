#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "allee/driver/config.hpp"

namespace allee::driver {

struct RunResult {
  std::vector<std::filesystem::path> files;                  // every CSV written
  std::vector<std::pair<std::string, std::string>> summary;  // headline quantities, also in result.csv
  std::filesystem::path manifest;
};

// Runs the configured experiment into cfg.output_dir. Module errors propagate as allee::Error.
RunResult run_experiment(const ExperimentConfig& cfg, int jobs = 1, std::ostream* log = nullptr);

}  // namespace allee::driver
