#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "allee/driver/config.hpp"
#include "allee/driver/experiment.hpp"
#include "allee/errors.hpp"

int main(int argc, char** argv) {
  using namespace allee;
  using namespace allee::driver;

  CLI::App app{"Reaction-diffusion prey-predator toolkit"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool quiet = false;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"equilibria", "equilibria and per-mode stability"},
      {"temporal-diagram", "temporal bifurcation diagram over a growth sweep"},
      {"thresholds", "temporal and spatial bifurcation thresholds"},
      {"simulate", "reaction-diffusion run"},
      {"continue", "arclength continuation of steady states"},
      {"wave-scan", "travelling-wave classification over growth and speed"},
      {"lyapunov", "largest Lyapunov exponent of a reaction-diffusion run"},
      {"pulse", "moving-pulse run with island counts"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
    sub->add_option("--seed", seed, "random seed (overrides seed)");
    sub->add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", quiet, "suppress progress output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    ExperimentConfig cfg = load_config(config_path);
    if (std::string(to_string(cfg.command)) != name) {
      std::cerr << "ValidationError: config command '" << to_string(cfg.command) << "' does not match '" << name << "'\n";
      return 2;
    }
    if (seed) cfg.seed = seed;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    validate(cfg);
    const RunResult r = run_experiment(cfg, jobs, quiet ? nullptr : &std::cerr);
    if (!quiet) std::cerr << "wrote " << r.files.size() << " files, manifest " << r.manifest.string() << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
