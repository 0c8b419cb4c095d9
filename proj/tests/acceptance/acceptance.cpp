#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "allee/continuation.hpp"
#include "allee/driver/config.hpp"
#include "allee/driver/experiment.hpp"
#include "allee/errors.hpp"
#include "allee/linear.hpp"
#include "allee/temporal.hpp"
#include "allee/thresholds.hpp"
#include "allee/wave.hpp"
#include "properties.hpp"

namespace fs = std::filesystem;
using namespace allee;
using namespace allee::driver;

namespace {

struct Context {
  fs::path configs;
  fs::path out;
  int jobs = 1;
};

struct Outcome {
  bool ok = true;
  std::vector<std::string> lines;

  void check(bool cond, const std::string& what) {
    ok = ok && cond;
    lines.push_back(std::string(cond ? "  ok   " : "  FAIL ") + what);
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

ExperimentConfig config(const Context& ctx, const std::string& name) {
  ExperimentConfig cfg = load_config(ctx.configs / (name + ".cfg"));
  cfg.output_dir = ctx.out / name;
  return cfg;
}

std::string lookup(const RunResult& r, const std::string& key) {
  for (const auto& [k, v] : r.summary)
    if (k == key) return v;
  return {};
}

double number(const RunResult& r, const std::string& key) {
  const std::string v = lookup(r, key);
  return v.empty() || v == "none" ? NAN : std::stod(v);
}

Field read_snapshot(const fs::path& path, const Grid& grid) {
  std::ifstream in(path);
  std::string line;
  Field f = constant_field(grid, 0.0, 0.0);
  int i = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, u, v;
    row >> x >> u >> v;
    if (i < grid.points) {
      f.u[i] = u;
      f.v[i] = v;
    }
    ++i;
  }
  if (i != grid.points) fail(ErrorCode::InvalidArgument, "snapshot size mismatch in " + path.string());
  return f;
}

Outcome temporal_thresholds(const Context& ctx) {
  Outcome o;
  const auto cfg = config(ctx, "temporal_thresholds");
  const Params& p = cfg.kinetics;
  const double sn = sigma_sn(p), tc = sigma_tc(p);
  o.check(sn == 0.4, "saddle-node " + fmt(sn) + " == 0.4");
  o.check(within(tc, 0.43956, 1e-4), "transcritical " + fmt(tc) + " vs 0.43956 +- 1e-4");
  const HopfPoint h = hopf_point(p, cfg.thresholds.hopf_min, cfg.thresholds.hopf_max);
  o.check(within(h.growth, 1.8566, 1e-3), "hopf " + fmt(h.growth) + " vs 1.8566 +- 1e-3");
  o.check(within(h.state.u, 0.5986, 1e-3) && within(h.state.v, 0.2486, 1e-3),
          "hopf state (" + fmt(h.state.u) + ", " + fmt(h.state.v) + ") vs (0.5986, 0.2486) +- 1e-3");
  const double l1 = first_lyapunov_coefficient(p, h) / std::numbers::pi;
  o.check(l1 < 0.0 && std::abs(l1 + 22.7488) / 22.7488 < 0.05, "l1/pi " + fmt(l1) + " vs -22.7488 within 5%");
  return o;
}

Outcome heteroclinic(const Context& ctx) {
  Outcome o;
  const auto cfg = config(ctx, "heteroclinic");
  const double s = heteroclinic_threshold(cfg.kinetics, cfg.thresholds.heteroclinic_min, cfg.thresholds.heteroclinic_max);
  o.check(within(s, 1.789, 5e-3), "heteroclinic threshold " + fmt(s) + " vs 1.789 +- 5e-3");
  return o;
}

Outcome spatial_thresholds(const Context& ctx) {
  Outcome o;
  const auto cfg = config(ctx, "spatial_thresholds");
  const auto th = turing_bd_thresholds(cfg.kinetics, cfg.spatial.diffusion, cfg.thresholds.spatial_min,
                                       cfg.thresholds.spatial_max);
  double turing = NAN, bd = NAN;
  for (const auto& t : th) {
    if (t.regime == SpatialRegime::TuringSide && std::isnan(turing)) turing = t.growth;
    if (t.regime == SpatialRegime::BDSide && std::isnan(bd)) bd = t.growth;
  }
  o.check(within(turing, 1.861, 5e-3), "turing " + fmt(turing) + " vs 1.861 +- 5e-3");
  o.check(within(bd, 2.098, 5e-3), "belyakov-devaney " + fmt(bd) + " vs 2.098 +- 5e-3");
  return o;
}

Outcome nonexistence(const Context& ctx) {
  Outcome o;
  const auto cfg = config(ctx, "nonexistence");
  const auto b = nonexistence_dstar(cfg.kinetics, cfg.spatial.length);
  o.check(within(b.d_star, 0.4439, 1e-3), "d* " + fmt(b.d_star) + " vs 0.4439 +- 1e-3");
  return o;
}

Outcome branch_points(const Context& ctx) {
  Outcome o;
  const auto cfg = config(ctx, "branch_points");
  const double targets[] = {1.939, 1.867, 1.812};
  std::vector<double> linear;
  for (int n = 19; n <= 21; ++n) {
    const auto s = branch_point_sigmas(cfg.kinetics, cfg.spatial.diffusion, cfg.spatial.length, n, 1.0, 3.0);
    const double v = s.empty() ? NAN : s.front();
    linear.push_back(v);
    o.check(within(v, targets[n - 19], 1e-2),
            "mode " + std::to_string(n) + " branch point " + fmt(v) + " vs " + fmt(targets[n - 19]) + " +- 1e-2");
  }
  const auto r = run_experiment(cfg, ctx.jobs);
  std::vector<double> detected;
  for (int i = 1; i <= int(number(r, "detected_branch_points")); ++i)
    detected.push_back(number(r, "branch_point_" + std::to_string(i)));
  auto nearest = [&](double s) {
    double best = INFINITY;
    for (double d : detected) best = std::min(best, std::abs(d - s));
    return best;
  };
  for (int k = 0; k < 3; ++k) {
    o.check(nearest(targets[k]) <= 2e-2, "continuation branch point near " + fmt(targets[k]) + ": distance " +
                                             fmt(nearest(targets[k])) + " <= 2e-2");
    o.lines.push_back("  info continuation vs linear analysis, mode " + std::to_string(19 + k) + ": distance " +
                      fmt(nearest(linear[k])));
  }
  return o;
}

Outcome pattern_selection(const Context& ctx) {
  Outcome o;
  const auto cfg = config(ctx, "pattern_selection");
  const auto r = run_experiment(cfg, ctx.jobs);
  const std::string a = lookup(r, "asymptotic");
  o.check(a == "stationary-pattern", "asymptotic class " + a);
  const double support = number(r, "half_max_support");
  o.check(support < 0.5, "half-max support " + fmt(support) + " < 0.5");
  SteadyProblem prob;
  prob.grid = {cfg.spatial.length, cfg.grid.points};
  prob.p = cfg.kinetics;
  prob.diffusion = cfg.spatial.diffusion;
  const Field f = read_snapshot(cfg.output_dir / "final.csv", prob.grid);
  const auto x = newton_correct(pack(f), cfg.kinetics.growth, prob);
  const auto st = solution_stability(x, cfg.kinetics.growth, prob);
  o.check(st.n_unstable == 0, "unstable eigenvalues of the settled state: " + std::to_string(st.n_unstable));
  return o;
}

Outcome traveling_wave(const Context& ctx) {
  Outcome o;
  const auto cfg = config(ctx, "front_speed");
  const double cm = c_min(cfg.kinetics, cfg.spatial.diffusion);
  o.check(within(cm, 4.6707, 1e-3), "c_min " + fmt(cm) + " vs 4.6707 +- 1e-3");
  const auto r = run_experiment(cfg, ctx.jobs);
  const double c = number(r, "front_speed");
  o.check(c >= 4.6 && c <= 4.85, "front speed " + fmt(c) + " in [4.6, 4.85]");
  const auto orb = shoot_heteroclinic(cfg.kinetics, cfg.spatial.diffusion, 5.9);
  o.check(orb.found && orb.wedge_ok, std::string("connection at c = 5.9: found ") + (orb.found ? "yes" : "no") +
                                         ", wedge " + (orb.wedge_ok ? "yes" : "no"));
  return o;
}

Outcome wave_scan(const Context& ctx) {
  Outcome o;
  const auto cfg = config(ctx, "wave_scan");
  const double d = cfg.spatial.diffusion;
  auto grid = [](double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
  };
  const auto growths = grid(cfg.sweep.growth_min, cfg.sweep.growth_max, cfg.sweep.growth_steps);
  const auto speeds = grid(cfg.sweep.speed_min, cfg.sweep.speed_max, cfg.sweep.speed_steps);
  ScanOptions opt;
  opt.jobs = ctx.jobs;
  opt.reference_growth = cfg.wave.reference_growth;
  opt.reference_speed = cfg.wave.reference_speed;
  opt.shoot.nodes = cfg.wave.nodes;
  opt.shoot.horizon = cfg.wave.horizon;
  const auto cells = scan_plane(cfg.kinetics, d, growths, speeds, opt);

  const double low = *std::min_element(growths.begin(), growths.end());
  const double cm_low = c_min(cfg.kinetics.with_growth(low), d);
  int above = 0, nonmono = 0;
  for (const auto& c : cells)
    if (c.growth == low && c.speed >= cm_low) {
      ++above;
      nonmono += c.cls == WaveClass::NonMonotonic;
    }
  o.check(above > 0 && nonmono == above, "sigma = " + fmt(low) + ": " + std::to_string(nonmono) + " of " +
                                             std::to_string(above) + " cells above c_min non-monotonic");
  const auto b = monotonicity_boundary(cells);
  o.check(b && *b >= 2.5 && *b <= 2.8, "monotonicity boundary " + (b ? fmt(*b) : std::string("none")) + " in [2.5, 2.8]");

  const double dc = speeds.size() > 1 ? speeds[1] - speeds[0] : 0.0;
  double worst = 0.0;
  for (double g : growths) {
    double first = INFINITY;
    for (const auto& c : cells)
      if (c.growth == g && c.cls != WaveClass::NoWave) first = std::min(first, c.speed);
    if (std::isfinite(first)) worst = std::max(worst, std::abs(first - c_min(cfg.kinetics.with_growth(g), d)));
  }
  o.check(worst <= dc, "largest gap between the no-wave edge and c_min " + fmt(worst) + " <= one cell " + fmt(dc));
  return o;
}

Outcome chaos(const Context& ctx) {
  Outcome o;
  const auto r = run_experiment(config(ctx, "chaos"), ctx.jobs);
  const double l = number(r, "lambda_max");
  o.check(l > 0.002 && l < 0.03, "largest Lyapunov exponent " + fmt(l) + " in (0.002, 0.03)");
  return o;
}

Outcome moving_pulse(const Context& ctx) {
  Outcome o;
  const auto r = run_experiment(config(ctx, "pulse"), ctx.jobs);
  const double islands = number(r, "max_islands");
  const double period = number(r, "period");
  o.check(islands == 16.0, "max island count " + fmt(islands) + " == 16");
  o.check(std::abs(period - 2558.0) / 2558.0 <= 0.05, "period " + fmt(period) + " vs 2558 within 5%");
  return o;
}

Outcome moving_pulse_smoke(const Context& ctx) {
  Outcome o;
  const auto r = run_experiment(config(ctx, "pulse_smoke"), ctx.jobs);
  const double islands = number(r, "max_islands");
  o.check(islands >= 4.0, "max island count " + fmt(islands) + " >= 4");
  return o;
}

Outcome properties(const Context&) {
  Outcome o;
  using namespace allee::testing;
  const std::pair<const char*, PropertyResult (*)()> suites[] = {
      {"jacobian agreement", jacobian_agreement},
      {"equilibrium residuals", equilibrium_residuals},
      {"diffusion mass conservation", diffusion_mass_conservation},
      {"cosine mode decay", cosine_mode_decay},
      {"continuation bounds", continuation_bounds},
      {"branch reversibility", branch_reversibility},
      {"quadrantal symmetry", quadrantal_symmetry},
      {"seeded determinism", seeded_determinism},
  };
  for (const auto& [name, fn] : suites) {
    const auto r = fn();
    o.check(r.ok, std::string(name) + (r.detail.empty() ? "" : ": " + r.detail));
  }
  return o;
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<Outcome(const Context&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"1", "temporal thresholds", temporal_thresholds},
      {"2", "heteroclinic threshold", heteroclinic},
      {"3", "spatial thresholds", spatial_thresholds},
      {"4", "non-existence bound", nonexistence},
      {"5", "branch points", branch_points},
      {"6", "pattern selection", pattern_selection},
      {"7", "travelling wave", traveling_wave},
      {"8", "wave scan", wave_scan},
      {"9", "spatio-temporal chaos", chaos},
      {"10", "moving pulse", moving_pulse},
      {"10-smoke", "moving pulse, half resolution", moving_pulse_smoke},
      {"11", "property suites", properties},
  };

  CLI::App app{"Acceptance checks; prints one PASS/FAIL line per criterion"};
  std::vector<std::string> selected;
  Context ctx;
  ctx.configs = ALLEE_CONFIG_DIR;
  ctx.out = "acceptance_out";
  ctx.jobs = std::max(1u, std::thread::hardware_concurrency());
  bool verbose = false;
  app.add_option("criteria", selected, "Criterion ids (default: all)");
  app.add_option("--configs", ctx.configs, "Directory holding the experiment configs")->check(CLI::ExistingDirectory);
  app.add_option("--out", ctx.out, "Output root for experiment artefacts");
  app.add_option("--jobs", ctx.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", verbose, "Print every individual check");
  CLI11_PARSE(app, argc, argv);

  for (const auto& id : selected)
    if (std::none_of(criteria.begin(), criteria.end(), [&](const Criterion& c) { return c.id == id; })) {
      std::fprintf(stderr, "unknown criterion %s\n", id.c_str());
      return 2;
    }

  bool all_ok = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    try {
      o = c.run(ctx);
    } catch (const std::exception& e) {
      o.ok = false;
      o.lines.push_back(std::string("  FAIL error: ") + e.what());
    }
    all_ok = all_ok && o.ok;
    std::printf("criterion %s (%s): %s\n", c.id.c_str(), c.title.c_str(), o.ok ? "PASS" : "FAIL");
    for (const auto& l : o.lines)
      if (verbose || !o.ok || l.rfind("  info", 0) == 0) std::printf("%s\n", l.c_str());
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
