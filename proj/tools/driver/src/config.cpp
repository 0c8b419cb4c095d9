#include "allee/driver/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "allee/errors.hpp"

namespace allee::driver {

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Equilibria: return "equilibria";
    case Command::TemporalDiagram: return "temporal-diagram";
    case Command::Thresholds: return "thresholds";
    case Command::Simulate: return "simulate";
    case Command::Continue: return "continue";
    case Command::WaveScan: return "wave-scan";
    case Command::Lyapunov: return "lyapunov";
    case Command::Pulse: return "pulse";
  }
  return "unknown";
}

bool ExperimentConfig::stochastic() const {
  switch (command) {
    case Command::Lyapunov: return true;
    case Command::Simulate: return run.initial == InitialCondition::Noise || (run.initial == InitialCondition::Pulse && run.noise > 0.0);
    case Command::Pulse: return run.noise > 0.0;
    default: return false;
  }
}

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    if (issues[i].line > 0) os << "line " << issues[i].line << ": ";
    os << issues[i].message;
  }
  return os.str();
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_real(std::string_view v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("expected a number, got '" + std::string(v) + "'");
  return x;
}

long long to_integer(std::string_view v) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
  return x;
}

bool to_bool(std::string_view v) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(v) + "'");
}

template <class E>
E to_enum(std::string_view v, std::initializer_list<std::pair<std::string_view, E>> options) {
  std::string names;
  for (const auto& [name, value] : options) {
    if (v == name) return value;
    names += names.empty() ? std::string(name) : ", " + std::string(name);
  }
  throw std::invalid_argument("'" + std::string(v) + "' is not one of " + names);
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

template <class T>
Setter real(T ExperimentConfig::*block, double T::*field) {
  return [=](ExperimentConfig& c, std::string_view v) { c.*block.*field = to_real(v); };
}
template <class T>
Setter integer(T ExperimentConfig::*block, int T::*field) {
  return [=](ExperimentConfig& c, std::string_view v) { c.*block.*field = static_cast<int>(to_integer(v)); };
}
template <class T>
Setter boolean(T ExperimentConfig::*block, bool T::*field) {
  return [=](ExperimentConfig& c, std::string_view v) { c.*block.*field = to_bool(v); };
}

const std::map<std::string, Setter>& schema() {
  using C = ExperimentConfig;
  static const std::map<std::string, Setter> table = {
      {"command", [](C& c, std::string_view v) {
         c.command = to_enum<Command>(v, {{"equilibria", Command::Equilibria},
                                          {"temporal-diagram", Command::TemporalDiagram},
                                          {"thresholds", Command::Thresholds},
                                          {"simulate", Command::Simulate},
                                          {"continue", Command::Continue},
                                          {"wave-scan", Command::WaveScan},
                                          {"lyapunov", Command::Lyapunov},
                                          {"pulse", Command::Pulse}});
       }},
      {"seed", [](C& c, std::string_view v) {
         const long long s = to_integer(v);
         if (s < 0) throw std::invalid_argument("seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"output_dir", [](C& c, std::string_view v) { c.output_dir = std::string(v); }},

      {"kinetics.saturation", real(&C::kinetics, &Params::saturation)},
      {"kinetics.interference", real(&C::kinetics, &Params::interference)},
      {"kinetics.conversion", real(&C::kinetics, &Params::conversion)},
      {"kinetics.growth", real(&C::kinetics, &Params::growth)},
      {"kinetics.mortality", real(&C::kinetics, &Params::mortality)},

      {"spatial.diffusion", real(&C::spatial, &Spatial::diffusion)},
      {"spatial.length", real(&C::spatial, &Spatial::length)},

      {"grid.points", integer(&C::grid, &GridBlock::points)},
      {"grid.dt", real(&C::grid, &GridBlock::dt)},
      {"grid.scheme", [](C& c, std::string_view v) {
         c.grid.scheme = to_enum<Scheme>(v, {{"strang", Scheme::Strang}, {"imex-euler", Scheme::ImexEuler}});
       }},

      {"sweep.growth_min", real(&C::sweep, &SweepBlock::growth_min)},
      {"sweep.growth_max", real(&C::sweep, &SweepBlock::growth_max)},
      {"sweep.growth_steps", integer(&C::sweep, &SweepBlock::growth_steps)},
      {"sweep.speed_min", real(&C::sweep, &SweepBlock::speed_min)},
      {"sweep.speed_max", real(&C::sweep, &SweepBlock::speed_max)},
      {"sweep.speed_steps", integer(&C::sweep, &SweepBlock::speed_steps)},

      {"run.initial", [](C& c, std::string_view v) {
         c.run.initial = to_enum<InitialCondition>(v, {{"homogeneous", InitialCondition::Homogeneous},
                                                       {"noise", InitialCondition::Noise},
                                                       {"invasion-step", InitialCondition::InvasionStep},
                                                       {"pulse", InitialCondition::Pulse}});
       }},
      {"run.duration", real(&C::run, &RunBlock::duration)},
      {"run.transient", real(&C::run, &RunBlock::transient)},
      {"run.noise", real(&C::run, &RunBlock::noise)},
      {"run.summary_every", real(&C::run, &RunBlock::summary_every)},
      {"run.snapshot_every", real(&C::run, &RunBlock::snapshot_every)},
      {"run.classify_window", real(&C::run, &RunBlock::classify_window)},
      {"run.step_position", real(&C::run, &RunBlock::step_position)},
      {"run.front_level", real(&C::run, &RunBlock::front_level)},
      {"run.front_from", real(&C::run, &RunBlock::front_from)},
      {"run.front_to", real(&C::run, &RunBlock::front_to)},
      {"run.pulse_center", real(&C::run, &RunBlock::pulse_center)},
      {"run.pulse_half_width", real(&C::run, &RunBlock::pulse_half_width)},
      {"run.island_threshold", real(&C::run, &RunBlock::island_threshold)},
      {"run.period_window", real(&C::run, &RunBlock::period_window)},
      {"run.renorm_interval", real(&C::run, &RunBlock::renorm_interval)},

      {"continue.start", [](C& c, std::string_view v) {
         c.cont.start = std::string(to_enum<std::string_view>(v, {{"homogeneous", "homogeneous"}, {"localized", "localized"}}));
       }},
      {"continue.ds", real(&C::cont, &ContinueBlock::ds)},
      {"continue.ds_max", real(&C::cont, &ContinueBlock::ds_max)},
      {"continue.ds_min", real(&C::cont, &ContinueBlock::ds_min)},
      {"continue.steps", integer(&C::cont, &ContinueBlock::steps)},
      {"continue.direction", integer(&C::cont, &ContinueBlock::direction)},
      {"continue.growth_min", real(&C::cont, &ContinueBlock::growth_min)},
      {"continue.growth_max", real(&C::cont, &ContinueBlock::growth_max)},
      {"continue.stability", boolean(&C::cont, &ContinueBlock::stability)},
      {"continue.eigenvalues", integer(&C::cont, &ContinueBlock::eigenvalues)},
      {"continue.switch_at", integer(&C::cont, &ContinueBlock::switch_at)},
      {"continue.switch_amplitude", real(&C::cont, &ContinueBlock::switch_amplitude)},
      {"continue.seed_amplitude", real(&C::cont, &ContinueBlock::seed_amplitude)},
      {"continue.solutions", boolean(&C::cont, &ContinueBlock::solutions)},

      {"thresholds.hopf_min", real(&C::thresholds, &ThresholdBlock::hopf_min)},
      {"thresholds.hopf_max", real(&C::thresholds, &ThresholdBlock::hopf_max)},
      {"thresholds.spatial_min", real(&C::thresholds, &ThresholdBlock::spatial_min)},
      {"thresholds.spatial_max", real(&C::thresholds, &ThresholdBlock::spatial_max)},
      {"thresholds.heteroclinic", boolean(&C::thresholds, &ThresholdBlock::heteroclinic)},
      {"thresholds.heteroclinic_min", real(&C::thresholds, &ThresholdBlock::heteroclinic_min)},
      {"thresholds.heteroclinic_max", real(&C::thresholds, &ThresholdBlock::heteroclinic_max)},
      {"thresholds.mode_max", integer(&C::thresholds, &ThresholdBlock::mode_max)},
      {"thresholds.branch_mode_min", integer(&C::thresholds, &ThresholdBlock::branch_mode_min)},
      {"thresholds.branch_mode_max", integer(&C::thresholds, &ThresholdBlock::branch_mode_max)},

      {"wave.reference_growth", real(&C::wave, &WaveBlock::reference_growth)},
      {"wave.reference_speed", real(&C::wave, &WaveBlock::reference_speed)},
      {"wave.nodes", integer(&C::wave, &WaveBlock::nodes)},
      {"wave.horizon", real(&C::wave, &WaveBlock::horizon)},
  };
  return table;
}

const std::set<std::string> kSections = {"kinetics", "spatial", "grid", "sweep", "run", "continue", "thresholds", "wave"};

}  // namespace

ConfigError::ConfigError(bool validation, std::vector<ConfigIssue> issues)
    : std::runtime_error(std::string(validation ? "ValidationError: " : "ParseError: ") + join_issues(issues)),
      validation_(validation),
      issues_(std::move(issues)) {}

void validate(const ExperimentConfig& cfg) {
  std::vector<ConfigIssue> issues;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) issues.push_back({0, msg});
  };
  auto guarded = [&](auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      issues.push_back({0, e.what()});
    }
  };
  guarded([&] { cfg.kinetics.validate(); });
  guarded([&] { cfg.spatial.validate(); });
  check(cfg.grid.points == 0 || cfg.grid.points >= 16, "grid.points must be 0 (default) or at least 16");
  check(cfg.grid.dt >= 0.0, "grid.dt must be non-negative");

  const auto& sw = cfg.sweep;
  switch (cfg.command) {
    case Command::TemporalDiagram:
      check(sw.growth_steps >= 2, "temporal-diagram needs sweep.growth_steps >= 2");
      check(sw.growth_min > 0.0 && sw.growth_min < sw.growth_max, "sweep.growth_min must be positive and below sweep.growth_max");
      break;
    case Command::WaveScan:
      check(sw.growth_steps >= 2 && sw.speed_steps >= 2, "wave-scan needs sweep.growth_steps and sweep.speed_steps >= 2");
      check(sw.growth_min > 0.0 && sw.growth_min < sw.growth_max, "sweep.growth_min must be positive and below sweep.growth_max");
      check(sw.speed_min > 0.0 && sw.speed_min < sw.speed_max, "sweep.speed_min must be positive and below sweep.speed_max");
      check(cfg.wave.nodes >= 16 && cfg.wave.horizon > 0.0, "wave.nodes must be >= 16 and wave.horizon positive");
      break;
    case Command::Thresholds:
      check(cfg.thresholds.hopf_min < cfg.thresholds.hopf_max, "thresholds.hopf_min must be below thresholds.hopf_max");
      check(cfg.thresholds.spatial_min < cfg.thresholds.spatial_max, "thresholds.spatial_min must be below thresholds.spatial_max");
      check(cfg.thresholds.heteroclinic_min < cfg.thresholds.heteroclinic_max,
            "thresholds.heteroclinic_min must be below thresholds.heteroclinic_max");
      check(cfg.thresholds.branch_mode_min <= cfg.thresholds.branch_mode_max, "thresholds.branch_mode_min must not exceed branch_mode_max");
      break;
    case Command::Continue:
      check(cfg.cont.ds > 0.0 && cfg.cont.ds_min > 0.0 && cfg.cont.ds_min <= cfg.cont.ds, "continue.ds and continue.ds_min must satisfy 0 < ds_min <= ds");
      check(cfg.cont.steps > 0, "continue.steps must be positive");
      check(cfg.cont.direction == 1 || cfg.cont.direction == -1, "continue.direction must be 1 or -1");
      check(cfg.cont.growth_min < cfg.cont.growth_max, "continue.growth_min must be below continue.growth_max");
      check(cfg.cont.switch_at >= 0, "continue.switch_at must be non-negative");
      check(cfg.cont.eigenvalues > 0, "continue.eigenvalues must be positive");
      break;
    case Command::Simulate:
    case Command::Lyapunov:
    case Command::Pulse:
      check(cfg.run.duration > 0.0, "run.duration must be positive");
      check(cfg.run.transient >= 0.0, "run.transient must be non-negative");
      check(cfg.run.noise >= 0.0, "run.noise must be non-negative");
      check(cfg.run.summary_every > 0.0, "run.summary_every must be positive");
      check(cfg.run.snapshot_every >= 0.0, "run.snapshot_every must be non-negative");
      check(cfg.run.pulse_half_width > 0.0, "run.pulse_half_width must be positive");
      check(cfg.run.island_threshold > 0.0, "run.island_threshold must be positive");
      check(cfg.run.renorm_interval > 0.0, "run.renorm_interval must be positive");
      break;
    case Command::Equilibria:
      break;
  }
  check(!cfg.stochastic() || cfg.seed.has_value(),
        "seed is required for a run with a random initial condition (command " + std::string(to_string(cfg.command)) + ")");
  if (!issues.empty()) throw ConfigError(true, std::move(issues));
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::vector<ConfigIssue> issues;
  std::set<std::string> seen;
  std::string section;
  bool have_command = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back({line_no, "malformed section header"});
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!kSections.count(section)) issues.push_back({line_no, "unknown section [" + section + "]"});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back({line_no, "expected key = value"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const std::string full = section.empty() ? key : section + "." + key;
    const auto it = schema().find(full);
    if (it == schema().end()) {
      issues.push_back({line_no, "unknown key '" + full + "'"});
      continue;
    }
    if (!seen.insert(full).second) issues.push_back({line_no, "duplicate key '" + full + "'"});
    if (value.empty()) {
      issues.push_back({line_no, "missing value for '" + full + "'"});
      continue;
    }
    try {
      it->second(cfg, value);
      if (full == "command") have_command = true;
    } catch (const std::exception& e) {
      issues.push_back({line_no, full + ": " + e.what()});
    }
  }
  if (!have_command) issues.push_back({0, "missing required key 'command'"});
  if (!issues.empty()) throw ConfigError(false, std::move(issues));
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(false, {{0, "cannot read " + path.string()}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace allee::driver
