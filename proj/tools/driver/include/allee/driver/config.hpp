#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "allee/params.hpp"
#include "allee/pde.hpp"

namespace allee::driver {

enum class Command { Equilibria, TemporalDiagram, Thresholds, Simulate, Continue, WaveScan, Lyapunov, Pulse };
std::string_view to_string(Command c) noexcept;

enum class InitialCondition { Homogeneous, Noise, InvasionStep, Pulse };

struct GridBlock {
  int points = 0;    // 0 picks the default resolution
  double dt = 0.0;   // 0 picks the default step
  Scheme scheme = Scheme::Strang;
};

struct SweepBlock {
  double growth_min = 0.3, growth_max = 2.0;
  int growth_steps = 0;
  double speed_min = 4.0, speed_max = 9.0;
  int speed_steps = 0;
};

struct RunBlock {
  InitialCondition initial = InitialCondition::Noise;
  double duration = 1000.0;
  double transient = 0.0;
  double noise = 1e-3;
  double summary_every = 1.0;
  double snapshot_every = 0.0;
  double classify_window = 500.0;
  double step_position = 50.0;
  double front_level = 0.5;     // fraction of the interior predator density
  double front_from = 0.0, front_to = 0.0;
  double pulse_center = -1.0;   // negative: domain centre
  double pulse_half_width = 10.0;
  double island_threshold = 0.05;  // fraction of u1
  double period_window = 0.0;      // 0: second half of the run
  double renorm_interval = 1.0;
};

struct ContinueBlock {
  std::string start = "homogeneous";  // homogeneous | localized
  double ds = 0.01, ds_max = 0.04, ds_min = 1e-4;
  int steps = 200;
  int direction = -1;
  double growth_min = 0.5, growth_max = 3.0;
  bool stability = true;
  int eigenvalues = 30;
  int switch_at = 0;        // 1-based index of the branch point to switch at; 0 disables
  double switch_amplitude = 0.05;
  double seed_amplitude = 0.3;
  bool solutions = true;    // write per-point solution snapshots
};

struct ThresholdBlock {
  double hopf_min = 1.5, hopf_max = 2.2;
  double spatial_min = 1.0, spatial_max = 3.0;
  bool heteroclinic = false;
  double heteroclinic_min = 1.6, heteroclinic_max = 1.85;
  int mode_max = -1;   // -1 picks the default mode count
  int branch_mode_min = 0, branch_mode_max = 0;  // modes whose branch points are listed
};

struct WaveBlock {
  double reference_growth = 2.7;
  double reference_speed = 5.9;
  int nodes = 12001;
  double horizon = 600.0;
};

struct ExperimentConfig {
  Command command = Command::Equilibria;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output_dir = "out";
  Params kinetics;
  Spatial spatial;
  GridBlock grid;
  SweepBlock sweep;
  RunBlock run;
  ContinueBlock cont;
  ThresholdBlock thresholds;
  WaveBlock wave;

  bool stochastic() const;
};

struct ConfigIssue {
  int line = 0;  // 0 when not tied to a line
  std::string message;
};

// Carries every problem found, not only the first.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(bool validation, std::vector<ConfigIssue> issues);
  bool validation() const { return validation_; }
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  bool validation_;
  std::vector<ConfigIssue> issues_;
};

// Parses "key = value" lines with [section] headers and '#' comments, then validates.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Validation alone, for configs assembled in code or modified by command-line overrides.
void validate(const ExperimentConfig& cfg);

}  // namespace allee::driver
