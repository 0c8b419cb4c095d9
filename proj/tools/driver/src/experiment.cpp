#include "allee/driver/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

#include "allee/continuation.hpp"
#include "allee/csv.hpp"
#include "allee/diagnostics.hpp"
#include "allee/driver/manifest.hpp"
#include "allee/equilibria.hpp"
#include "allee/errors.hpp"
#include "allee/linear.hpp"
#include "allee/pde.hpp"
#include "allee/temporal.hpp"
#include "allee/thresholds.hpp"
#include "allee/wave.hpp"

namespace allee::driver {

namespace fs = std::filesystem;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

std::string numbered(const char* stem, int index) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%05d.csv", stem, index);
  return buf;
}

class Session {
 public:
  Session(const ExperimentConfig& cfg, int jobs, std::ostream* log) : cfg_(cfg), jobs_(jobs), log_(log) {
    fs::create_directories(cfg.output_dir);
  }

  CsvWriter csv(const fs::path& rel, const std::vector<std::string>& header, const std::string& comment = {}) {
    const fs::path path = cfg_.output_dir / rel;
    fs::create_directories(path.parent_path());
    result_.files.push_back(path);
    return CsvWriter(path, header, comment);
  }

  void snapshot(const fs::path& rel, const Field& f) {
    const fs::path path = cfg_.output_dir / rel;
    fs::create_directories(path.parent_path());
    write_snapshot(path, f);
    result_.files.push_back(path);
  }

  void report(const std::string& key, const std::string& value) {
    result_.summary.emplace_back(key, value);
    if (log_) *log_ << key << " = " << value << '\n';
  }
  void report(const std::string& key, double value) { report(key, format_number(value)); }

  void note(const std::string& msg) {
    if (log_) *log_ << msg << '\n';
  }

  RunResult finish() {
    {
      auto w = csv("result.csv", {"quantity", "value"});
      for (const auto& [k, v] : result_.summary) w.row(std::vector<std::string>{k, v});
    }
    result_.manifest = write_manifest(cfg_.output_dir, result_.files);
    return std::move(result_);
  }

  const ExperimentConfig& cfg() const { return cfg_; }
  int jobs() const { return jobs_; }

 private:
  const ExperimentConfig& cfg_;
  int jobs_;
  std::ostream* log_;
  RunResult result_;
};

Grid make_grid(const ExperimentConfig& cfg) {
  const int points = cfg.grid.points > 0 ? cfg.grid.points
                                         : default_points(cfg.kinetics, cfg.spatial.diffusion, cfg.spatial.length);
  Grid g{cfg.spatial.length, points};
  g.validate();
  return g;
}

Simulator make_simulator(const ExperimentConfig& cfg, const Grid& g) {
  const double dt = cfg.grid.dt > 0.0 ? cfg.grid.dt : default_dt();
  return Simulator(g, cfg.kinetics, cfg.spatial.diffusion, dt, cfg.grid.scheme);
}

std::uint64_t seed_of(const ExperimentConfig& cfg) { return cfg.seed.value_or(0); }

Field initial_field(const ExperimentConfig& cfg, const Grid& g) {
  const auto& r = cfg.run;
  switch (r.initial) {
    case InitialCondition::Homogeneous: {
      const auto e = upper_coexisting(cfg.kinetics);
      if (!e) fail(ErrorCode::NotApplicable, "no coexisting state for a homogeneous start");
      return constant_field(g, e->u, e->v);
    }
    case InitialCondition::Noise: return perturbed_homogeneous(g, cfg.kinetics, r.noise, seed_of(cfg));
    case InitialCondition::InvasionStep: return invasion_step(g, cfg.kinetics, r.step_position);
    case InitialCondition::Pulse: {
      const double centre = r.pulse_center < 0.0 ? 0.5 * g.length : r.pulse_center;
      return center_pulse(g, cfg.kinetics, centre, r.pulse_half_width, r.noise, seed_of(cfg));
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown initial condition");
}

void write_summary(Session& s, const SpaceTimeRecord& rec) {
  auto w = s.csv("summary.csv", {"t", "U_av", "V_av", "spatial_variance_u"});
  for (std::size_t i = 0; i < rec.t.size(); ++i) w.row({rec.t[i], rec.u_av[i], rec.v_av[i], rec.var_u[i]});
}

void run_equilibria(Session& s) {
  const auto& cfg = s.cfg();
  const Params& p = cfg.kinetics;
  auto w = s.csv("equilibria.csv", {"sigma", "kind", "u", "v", "trace", "det", "stability_code"});
  for (const auto& e : all_equilibria(p))
    w.row(std::vector<std::string>{format_number(p.growth), std::string(to_string(e.kind)), format_number(e.u),
                                   format_number(e.v), format_number(e.trace), format_number(e.det),
                                   std::to_string(stability_code(e.stability))});
  if (const auto e = upper_coexisting(p)) {
    const int jmax = cfg.thresholds.mode_max >= 0 ? cfg.thresholds.mode_max
                                                  : default_mode_count(*e, p, cfg.spatial.diffusion, cfg.spatial.length);
    auto m = s.csv("modes.csv", {"j", "k_j", "trace", "det", "unstable"});
    int unstable = 0;
    for (const auto& r : mode_reports(*e, p, cfg.spatial.diffusion, cfg.spatial.length, jmax)) {
      m.row({double(r.j), r.k, r.trace, r.det, r.unstable ? 1.0 : 0.0});
      unstable += r.unstable;
    }
    s.report("interior_u", e->u);
    s.report("interior_v", e->v);
    s.report("interior_stability", std::string(to_string(e->stability)));
    s.report("unstable_modes", double(unstable));
  }
}

void run_diagram(Session& s) {
  const auto& cfg = s.cfg();
  DiagramOptions opt;
  opt.jobs = s.jobs();
  const auto rows = bifurcation_diagram(cfg.kinetics, linspace(cfg.sweep.growth_min, cfg.sweep.growth_max, cfg.sweep.growth_steps), opt);
  auto w = s.csv("diagram.csv", {"sigma", "branch_id", "u", "stability_code", "cycle_umin", "cycle_umax"});
  for (const auto& r : rows)
    w.row({r.growth, double(r.branch_id), r.u, double(stability_code(r.stability)), r.cycle_umin, r.cycle_umax});
  s.report("rows", double(rows.size()));
}

void run_thresholds(Session& s) {
  const auto& cfg = s.cfg();
  const Params& p = cfg.kinetics;
  const auto& t = cfg.thresholds;
  const double d = cfg.spatial.diffusion;
  auto w = s.csv("thresholds.csv", {"sigma", "threshold_kind", "K", "kminus", "kplus"});
  auto row = [&](double sigma, const std::string& kind, double K = NAN, double km = NAN, double kp = NAN) {
    w.row(std::vector<std::string>{format_number(sigma), kind, format_number(K), format_number(km), format_number(kp)});
    s.report("sigma_" + kind, sigma);
  };
  row(sigma_sn(p), "saddle_node");
  try {
    row(sigma_tc(p), "transcritical");
  } catch (const Error& e) {
    s.note(std::string("transcritical: ") + e.what());
  }
  std::optional<HopfPoint> h;
  try {
    h = hopf_point(p, t.hopf_min, t.hopf_max);
  } catch (const Error& e) {
    s.note(std::string("hopf: ") + e.what());
  }
  if (h) {
    row(h->growth, "hopf");
    auto hw = s.csv("hopf.csv", {"sigma", "u", "v", "lyapunov_over_pi", "normal_form"});
    const double l1 = first_lyapunov_coefficient(p, *h);
    const double nf = normal_form_coefficient(p, *h);
    hw.row({h->growth, h->state.u, h->state.v, l1 / std::numbers::pi, nf});
    s.report("hopf_u", h->state.u);
    s.report("hopf_v", h->state.v);
    s.report("lyapunov_over_pi", l1 / std::numbers::pi);
  }
  if (t.heteroclinic) row(heteroclinic_threshold(p, t.heteroclinic_min, t.heteroclinic_max), "heteroclinic");
  std::vector<SpatialThreshold> spatial;
  try {
    spatial = turing_bd_thresholds(p, d, t.spatial_min, t.spatial_max);
  } catch (const Error& e) {
    s.note(std::string("spatial thresholds: ") + e.what());
  }
  for (const auto& th : spatial) {
    const std::string kind = th.regime == SpatialRegime::TuringSide ? "turing" : th.regime == SpatialRegime::BDSide ? "bd" : "generic";
    row(th.growth, kind, th.K, th.k_minus, th.k_plus);
  }
  if (t.branch_mode_max > 0) {
    auto bw = s.csv("branch_points.csv", {"n", "sigma"});
    for (int n = std::max(1, t.branch_mode_min); n <= t.branch_mode_max; ++n)
      for (double sigma : branch_point_sigmas(p, d, cfg.spatial.length, n, t.spatial_min, t.spatial_max))
        bw.row({double(n), sigma});
  }
  try {
    const auto nb = nonexistence_dstar(p, cfg.spatial.length);
    auto nw = s.csv("nonexistence.csv", {"d_star", "A", "B", "k1", "u_upper", "u_lower"});
    nw.row({nb.d_star, nb.A, nb.B, nb.k1, nb.u_upper, nb.u_lower});
    s.report("d_star", nb.d_star);
  } catch (const Error& e) {
    s.note(std::string("non-existence bound: ") + e.what());
  }
}

void run_simulate(Session& s) {
  const auto& cfg = s.cfg();
  const Grid g = make_grid(cfg);
  const Simulator sim = make_simulator(cfg, g);
  Field f = initial_field(cfg, g);
  const bool front = cfg.run.initial == InitialCondition::InvasionStep;
  const auto e = upper_coexisting(cfg.kinetics);
  std::vector<double> ft, fx;
  RunOptions opt;
  opt.duration = cfg.run.duration;
  opt.summary_every = cfg.run.summary_every;
  opt.snapshot_every = cfg.run.snapshot_every;
  int snaps = 0;
  opt.on_snapshot = [&](const Field& fld) { s.snapshot(fs::path("snapshots") / numbered("snap", snaps++), fld); };
  if (front && e)
    opt.on_summary = [&](const Field& fld) {
      try {
        fx.push_back(front_position(fld, cfg.run.front_level * e->v));
        ft.push_back(fld.t);
      } catch (const Error&) {
      }
    };
  s.note("simulating " + format_number(cfg.run.duration) + " time units on " + std::to_string(g.points) + " points");
  const SpaceTimeRecord rec = run(f, sim, opt);
  write_summary(s, rec);
  s.snapshot("final.csv", f);
  s.report("points", double(g.points));
  s.report("dt", sim.dt());
  s.report("min_density", rec.min_value);
  if (rec.t.back() - rec.t.front() >= cfg.run.classify_window) {
    s.report("asymptotic", std::string(to_string(classify_asymptotic(rec, cfg.run.classify_window))));
    s.report("final_rate", rec.rate.back());
  }
  if (e) s.report("half_max_support", half_max_support(f, e->u));
  if (front) {
    auto w = s.csv("front.csv", {"t", "position"});
    for (std::size_t i = 0; i < ft.size(); ++i) w.row({ft[i], fx[i]});
    const double from = cfg.run.front_from > 0.0 ? cfg.run.front_from : 0.5 * cfg.run.duration;
    const double to = cfg.run.front_to > 0.0 ? cfg.run.front_to : cfg.run.duration;
    s.report("front_speed", measure_front_speed(ft, fx, from, to));
    s.report("c_min", c_min(cfg.kinetics, cfg.spatial.diffusion));
  }
}

void write_branch(Session& s, const std::string& stem, const Branch& br, const SteadyProblem& prob, bool solutions) {
  auto w = s.csv(stem + ".csv", {"point_index", "sigma", "l2norm_u", "n_unstable", "tag"});
  for (std::size_t i = 0; i < br.points.size(); ++i) {
    const auto& pt = br.points[i];
    w.row(std::vector<std::string>{std::to_string(i), format_number(pt.growth), format_number(pt.l2norm),
                                   std::to_string(pt.n_unstable), tag_string(pt.tags)});
    if (solutions) {
      Field f = unpack(pt.x, prob.grid);
      f.t = pt.growth;
      s.snapshot(fs::path(stem) / numbered("point", int(i)), f);
    }
  }
  auto sp = s.csv(stem + "_special.csv", {"kind", "sigma", "after_index"});
  for (const auto& p : br.specials)
    sp.row(std::vector<std::string>{tag_string(p.kind), format_number(p.growth), std::to_string(p.after)});
  s.report(stem + "_points", double(br.points.size()));
  s.report(stem + "_stop", br.stop_reason.empty() ? "steps exhausted" : br.stop_reason);
}

void run_continue(Session& s) {
  const auto& cfg = s.cfg();
  const auto& c = cfg.cont;
  const Grid g = make_grid(cfg);
  const SteadyProblem prob{g, cfg.kinetics, cfg.spatial.diffusion};
  const double g0 = cfg.kinetics.growth;
  std::vector<double> x0;
  if (c.start == "localized") {
    x0 = localized_seed(prob, g0, c.seed_amplitude);
  } else {
    const auto e = upper_coexisting(cfg.kinetics);
    if (!e) fail(ErrorCode::NotApplicable, "no coexisting state to start from");
    x0 = pack(constant_field(g, e->u, e->v));
  }
  ContinuationOptions opt;
  opt.steps = c.steps;
  opt.ds0 = c.ds;
  opt.ds_max = c.ds_max;
  opt.ds_min = c.ds_min;
  opt.direction = c.direction;
  opt.growth_min = c.growth_min;
  opt.growth_max = c.growth_max;
  opt.stability = c.stability;
  opt.n_eigs = c.eigenvalues;
  s.note("continuing from sigma = " + format_number(g0) + " on " + std::to_string(g.points) + " points");
  const Branch br = continue_branch(x0, g0, prob, opt);
  write_branch(s, "branch", br, prob, c.solutions);
  std::vector<const SpecialPoint*> bps;
  for (const auto& sp : br.specials)
    if (sp.kind & TagBP) bps.push_back(&sp);
  s.report("detected_branch_points", double(bps.size()));
  for (std::size_t i = 0; i < bps.size(); ++i) s.report("branch_point_" + std::to_string(i + 1), bps[i]->growth);
  if (c.switch_at > 0) {
    if (static_cast<std::size_t>(c.switch_at) > bps.size())
      fail(ErrorCode::KernelNotFound, "requested branch point " + std::to_string(c.switch_at) + " was not detected");
    const SwitchResult sw = branch_switch(*bps[c.switch_at - 1], prob, c.switch_amplitude);
    ContinuationOptions o2 = opt;
    std::vector<double> hint = sw.direction;
    o2.tangent_hint = hint;
    const Branch b2 = continue_branch(sw.x, sw.growth, prob, o2);
    write_branch(s, "switched", b2, prob, c.solutions);
    if (!b2.points.empty()) s.report("switched_mode", double(mode_number(b2.points.back().x, prob)));
  }
}

void run_wave_scan(Session& s) {
  const auto& cfg = s.cfg();
  const double d = cfg.spatial.diffusion;
  ScanOptions opt;
  opt.jobs = s.jobs();
  opt.reference_growth = cfg.wave.reference_growth;
  opt.reference_speed = cfg.wave.reference_speed;
  opt.shoot.nodes = cfg.wave.nodes;
  opt.shoot.horizon = cfg.wave.horizon;
  const auto growths = linspace(cfg.sweep.growth_min, cfg.sweep.growth_max, cfg.sweep.growth_steps);
  const auto speeds = linspace(cfg.sweep.speed_min, cfg.sweep.speed_max, cfg.sweep.speed_steps);
  s.note("scanning " + std::to_string(growths.size()) + " x " + std::to_string(speeds.size()) + " cells");
  const auto cells = scan_plane(cfg.kinetics, d, growths, speeds, opt);
  {
    auto w = s.csv("scan.csv", {"sigma", "c", "classification_code", "c_min_at_sigma"});
    for (const auto& c : cells) w.row({c.growth, c.speed, double(class_code(c.cls)), c.c_min});
  }
  const Params ref = cfg.kinetics.with_growth(cfg.wave.reference_growth);
  const HeteroclinicOrbit orbit = shoot_heteroclinic(ref, d, cfg.wave.reference_speed, opt.shoot);
  {
    auto w = s.csv("orbit.csv", {"t", "X", "Y", "W", "Z"});
    for (std::size_t i = 0; i < orbit.t.size(); ++i)
      w.row({orbit.t[i], orbit.states[i][0], orbit.states[i][1], orbit.states[i][2], orbit.states[i][3]});
  }
  s.report("reference_c_min", c_min(ref, d));
  s.report("reference_found", orbit.found ? "true" : "false");
  s.report("reference_wedge_ok", orbit.wedge_ok ? "true" : "false");
  s.report("reference_monotone", orbit.monotone ? "true" : "false");
  const auto b = monotonicity_boundary(cells);
  s.report("monotonicity_boundary", b ? format_number(*b) : "none");
  int counts[4] = {0, 0, 0, 0};
  for (const auto& c : cells) ++counts[class_code(c.cls)];
  for (WaveClass k : {WaveClass::NoWave, WaveClass::Monotonic, WaveClass::NonMonotonic, WaveClass::Unknown})
    s.report(std::string("cells_") + std::string(to_string(k)), double(counts[class_code(k)]));
}

void run_lyapunov(Session& s) {
  const auto& cfg = s.cfg();
  const Grid g = make_grid(cfg);
  const Simulator sim = make_simulator(cfg, g);
  const Field f = initial_field(cfg, g);
  LyapunovOptions opt;
  opt.duration = cfg.run.duration;
  opt.transient = cfg.run.transient;
  opt.renorm_interval = cfg.run.renorm_interval;
  opt.seed = seed_of(cfg);
  opt.require_settled = false;
  s.note("estimating the largest Lyapunov exponent over " + format_number(opt.duration) + " time units");
  const LyapunovResult r = largest_lyapunov(f, sim, opt);
  auto w = s.csv("lyapunov.csv", {"t", "lambda_running"});
  for (std::size_t i = 0; i < r.times.size(); ++i) w.row({r.times[i], r.running[i]});
  s.report("lambda_max", r.lambda_max);
  s.report("settled", r.settled ? "true" : "false");
}

void run_pulse(Session& s) {
  const auto& cfg = s.cfg();
  ExperimentConfig pc = cfg;
  pc.run.initial = InitialCondition::Pulse;
  const Grid g = make_grid(pc);
  const Simulator sim = make_simulator(pc, g);
  Field f = initial_field(pc, g);
  const double threshold = cfg.run.island_threshold * axial_roots(cfg.kinetics).upper;
  std::vector<double> it;
  std::vector<int> counts;
  RunOptions opt;
  opt.duration = cfg.run.duration;
  opt.summary_every = cfg.run.summary_every;
  opt.snapshot_every = cfg.run.snapshot_every;
  int snaps = 0;
  opt.on_snapshot = [&](const Field& fld) { s.snapshot(fs::path("snapshots") / numbered("snap", snaps++), fld); };
  opt.on_summary = [&](const Field& fld) {
    it.push_back(fld.t);
    counts.push_back(island_count(fld, threshold));
  };
  s.note("pulse run over " + format_number(cfg.run.duration) + " time units on " + std::to_string(g.points) + " points");
  const SpaceTimeRecord rec = run(f, sim, opt);
  write_summary(s, rec);
  s.snapshot("final.csv", f);
  {
    auto w = s.csv("islands.csv", {"t", "island_count"});
    for (std::size_t i = 0; i < it.size(); ++i) w.row({it[i], double(counts[i])});
  }
  int best = 0;
  double when = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] > best) {
      best = counts[i];
      when = it[i];
    }
  s.report("max_islands", double(best));
  s.report("time_of_max_islands", when);
  const double window = cfg.run.period_window > 0.0 ? cfg.run.period_window : 0.5 * cfg.run.duration;
  const auto period = dominant_period(rec.t, rec.u_av, window);
  s.report("period", period ? format_number(*period) : "none");
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, int jobs, std::ostream* log) {
  validate(cfg);
  Session s(cfg, jobs, log);
  switch (cfg.command) {
    case Command::Equilibria: run_equilibria(s); break;
    case Command::TemporalDiagram: run_diagram(s); break;
    case Command::Thresholds: run_thresholds(s); break;
    case Command::Simulate: run_simulate(s); break;
    case Command::Continue: run_continue(s); break;
    case Command::WaveScan: run_wave_scan(s); break;
    case Command::Lyapunov: run_lyapunov(s); break;
    case Command::Pulse: run_pulse(s); break;
  }
  return s.finish();
}

}  // namespace allee::driver
