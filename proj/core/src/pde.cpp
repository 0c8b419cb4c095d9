#include "allee/pde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "allee/diagnostics.hpp"
#include "allee/errors.hpp"
#include "allee/kinetics.hpp"
#include "allee/linear.hpp"

namespace allee {

void Grid::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) fail(ErrorCode::InvalidArgument, "grid length must be positive");
  if (points < 16) fail(ErrorCode::InvalidArgument, "grid needs at least 16 points");
}

Field constant_field(const Grid& grid, double u, double v) {
  grid.validate();
  return {grid, std::vector<double>(grid.points, u), std::vector<double>(grid.points, v), 0.0};
}

namespace {

Equilibrium interior_or_fail(const Params& p) {
  const auto e = upper_coexisting(p);
  if (!e) fail(ErrorCode::InvalidArgument, "parameters have no interior state");
  return *e;
}

}  // namespace

Field perturbed_homogeneous(const Grid& grid, const Params& p, double amplitude, std::uint64_t seed) {
  const Equilibrium e = interior_or_fail(p);
  Field f = constant_field(grid, e.u, e.v);
  if (amplitude == 0.0) return f;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  for (int i = 0; i < grid.points; ++i) {
    f.u[i] = std::max(0.0, f.u[i] + noise(rng));
    f.v[i] = std::max(0.0, f.v[i] + noise(rng));
  }
  return f;
}

Field invasion_step(const Grid& grid, const Params& p, double x_step) {
  const Equilibrium e = interior_or_fail(p);
  const double u1 = axial_roots(p).upper;
  if (!(x_step > 0.0 && x_step < grid.length)) fail(ErrorCode::BadSupport, "step position outside the domain");
  Field f = constant_field(grid, e.u, e.v);
  for (int i = 0; i < grid.points; ++i)
    if (grid.x(i) >= x_step) {
      f.u[i] = u1;
      f.v[i] = 0.0;
    }
  return f;
}

Field center_pulse(const Grid& grid, const Params& p, double center, double half_width, double noise,
                   std::uint64_t seed) {
  const Equilibrium e = interior_or_fail(p);
  if (!(half_width > 0.0) || center - half_width < 0.0 || center + half_width > grid.length)
    fail(ErrorCode::BadSupport, "pulse window exceeds the domain");
  Field f = constant_field(grid, 0.0, 0.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> xi(0.0, noise > 0.0 ? noise : 1.0);
  const double eps = 1e-9 * grid.dx();
  for (int i = 0; i < grid.points; ++i) {
    if (std::abs(grid.x(i) - center) > half_width + eps) continue;
    const double a = noise > 0.0 ? xi(rng) : 0.0;
    const double b = noise > 0.0 ? xi(rng) : 0.0;
    f.u[i] = std::max(0.0, e.u + a);
    f.v[i] = std::max(0.0, e.v + b);
  }
  return f;
}

double integral(const std::vector<double>& w, double dx) {
  if (w.empty()) return 0.0;
  double s = 0.5 * (w.front() + w.back());
  for (std::size_t i = 1; i + 1 < w.size(); ++i) s += w[i];
  return s * dx;
}

double spatial_mean(const std::vector<double>& w, double dx) {
  return integral(w, dx) / (dx * (w.size() - 1));
}

double spatial_variance(const std::vector<double>& w, double dx) {
  const double m = spatial_mean(w, dx);
  std::vector<double> sq(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) sq[i] = (w[i] - m) * (w[i] - m);
  return spatial_mean(sq, dx);
}

double l2_norm(const std::vector<double>& w, double dx) {
  std::vector<double> sq(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) sq[i] = w[i] * w[i];
  return std::sqrt(integral(sq, dx));
}

Simulator::Simulator(Grid grid, Params p, double diffusion, double dt, Scheme scheme, bool with_reaction)
    : grid_(grid), p_(p), d_(diffusion), dt_(dt), scheme_(scheme), reaction_(with_reaction) {
  grid_.validate();
  p_.validate();
  if (!(diffusion > 0.0)) fail(ErrorCode::InvalidArgument, "diffusion ratio must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::InvalidArgument, "time step must be positive");
  prey_ = make_diffusion(1.0);
  predator_ = make_diffusion(diffusion);
}

namespace {

// Tridiagonal form of I - c * coefficient * Laplacian with reflected ghosts.
num::Tridiagonal implicit_operator(int n, double r) {
  std::vector<double> lo(n, -r), di(n, 1.0 + 2.0 * r), up(n, -r);
  lo[0] = 0.0;
  up[n - 1] = 0.0;
  up[0] = -2.0 * r;
  lo[n - 1] = -2.0 * r;
  return {std::move(lo), std::move(di), std::move(up)};
}

constexpr double kTrBdf = 2.0 - std::numbers::sqrt2;

}  // namespace

Simulator::Diffusion Simulator::make_diffusion(double coefficient) const {
  const int n = grid_.points;
  const double r = coefficient * dt_ / (grid_.dx() * grid_.dx());
  Diffusion op;
  op.coef = coefficient;
  op.stage1 = implicit_operator(n, 0.5 * kTrBdf * r);
  op.stage2 = implicit_operator(n, (1.0 - kTrBdf) / (2.0 - kTrBdf) * r);
  op.euler = implicit_operator(n, r);
  return op;
}

void Simulator::apply_laplacian(const std::vector<double>& w, double coefficient, std::vector<double>& out) const {
  const int n = grid_.points;
  const double s = coefficient / (grid_.dx() * grid_.dx());
  out.resize(n);
  out[0] = 2.0 * s * (w[1] - w[0]);
  out[n - 1] = 2.0 * s * (w[n - 2] - w[n - 1]);
  for (int i = 1; i < n - 1; ++i) out[i] = s * (w[i - 1] - 2.0 * w[i] + w[i + 1]);
}

void Simulator::diffuse(std::vector<double>& w, const Diffusion& op) const {
  // TR-BDF2 over one full step
  std::vector<double> lap;
  apply_laplacian(w, op.coef, lap);
  const double h1 = 0.5 * kTrBdf * dt_;
  std::vector<double> w1(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) w1[i] = w[i] + h1 * lap[i];
  op.stage1.solve(w1);
  const double g = kTrBdf;
  const double c1 = 1.0 / (g * (2.0 - g)), c0 = (1.0 - g) * (1.0 - g) / (g * (2.0 - g));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = c1 * w1[i] - c0 * w[i];
  op.stage2.solve(w);
}

void Simulator::react(Field& f, double h) const {
  if (!reaction_) return;
  const int n = grid_.points;
  for (int i = 0; i < n; ++i) {
    const double u = f.u[i], v = f.v[i];
    const Rates k1 = kinetics_raw(u, v, p_);
    const Rates k2 = kinetics_raw(u + 0.5 * h * k1.prey, v + 0.5 * h * k1.predator, p_);
    const Rates k3 = kinetics_raw(u + 0.5 * h * k2.prey, v + 0.5 * h * k2.predator, p_);
    const Rates k4 = kinetics_raw(u + h * k3.prey, v + h * k3.predator, p_);
    f.u[i] = std::max(0.0, u + h / 6.0 * (k1.prey + 2 * k2.prey + 2 * k3.prey + k4.prey));
    f.v[i] = std::max(0.0, v + h / 6.0 * (k1.predator + 2 * k2.predator + 2 * k3.predator + k4.predator));
  }
}

void Simulator::react_tangent(Field& f, double h, std::vector<double>& du, std::vector<double>& dv) const {
  if (!reaction_) return;
  const int n = grid_.points;
  for (int i = 0; i < n; ++i) {
    const double u = f.u[i], v = f.v[i];
    const double a = du[i], b = dv[i];
    const Rates k1 = kinetics_raw(u, v, p_);
    const Mat2 j1 = jacobian_raw(u, v, p_);
    const double t1u = j1.a * a + j1.b * b, t1v = j1.c * a + j1.d * b;

    const double u2 = u + 0.5 * h * k1.prey, v2 = v + 0.5 * h * k1.predator;
    const double a2 = a + 0.5 * h * t1u, b2 = b + 0.5 * h * t1v;
    const Rates k2 = kinetics_raw(u2, v2, p_);
    const Mat2 j2 = jacobian_raw(u2, v2, p_);
    const double t2u = j2.a * a2 + j2.b * b2, t2v = j2.c * a2 + j2.d * b2;

    const double u3 = u + 0.5 * h * k2.prey, v3 = v + 0.5 * h * k2.predator;
    const double a3 = a + 0.5 * h * t2u, b3 = b + 0.5 * h * t2v;
    const Rates k3 = kinetics_raw(u3, v3, p_);
    const Mat2 j3 = jacobian_raw(u3, v3, p_);
    const double t3u = j3.a * a3 + j3.b * b3, t3v = j3.c * a3 + j3.d * b3;

    const double u4 = u + h * k3.prey, v4 = v + h * k3.predator;
    const double a4 = a + h * t3u, b4 = b + h * t3v;
    const Rates k4 = kinetics_raw(u4, v4, p_);
    const Mat2 j4 = jacobian_raw(u4, v4, p_);
    const double t4u = j4.a * a4 + j4.b * b4, t4v = j4.c * a4 + j4.d * b4;

    f.u[i] = std::max(0.0, u + h / 6.0 * (k1.prey + 2 * k2.prey + 2 * k3.prey + k4.prey));
    f.v[i] = std::max(0.0, v + h / 6.0 * (k1.predator + 2 * k2.predator + 2 * k3.predator + k4.predator));
    du[i] = a + h / 6.0 * (t1u + 2 * t2u + 2 * t3u + t4u);
    dv[i] = b + h / 6.0 * (t1v + 2 * t2v + 2 * t3v + t4v);
  }
}

double Simulator::advance(Field& f) const {
  if (f.grid.points != grid_.points) fail(ErrorCode::InvalidArgument, "field and simulator grids differ");
  const std::vector<double> u0 = f.u, v0 = f.v;
  if (scheme_ == Scheme::ImexEuler) {
    const int n = grid_.points;
    if (reaction_)
      for (int i = 0; i < n; ++i) {
        const Rates r = kinetics_raw(u0[i], v0[i], p_);
        f.u[i] = u0[i] + dt_ * r.prey;
        f.v[i] = v0[i] + dt_ * r.predator;
      }
    prey_.euler.solve(f.u);
    predator_.euler.solve(f.v);
    for (int i = 0; i < n; ++i) {
      f.u[i] = std::max(0.0, f.u[i]);
      f.v[i] = std::max(0.0, f.v[i]);
    }
  } else {
    react(f, 0.5 * dt_);
    diffuse(f.u, prey_);
    diffuse(f.v, predator_);
    react(f, 0.5 * dt_);
  }
  f.t += dt_;
  double rate = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i) {
    if (!std::isfinite(f.u[i]) || !std::isfinite(f.v[i])) fail(ErrorCode::NonFinite, "state became non-finite");
    rate = std::max({rate, std::abs(f.u[i] - u0[i]), std::abs(f.v[i] - v0[i])});
  }
  return rate / dt_;
}

void Simulator::advance_tangent(Field& f, std::vector<double>& du, std::vector<double>& dv) const {
  if (scheme_ != Scheme::Strang) fail(ErrorCode::InvalidArgument, "tangent propagation needs the Strang scheme");
  react_tangent(f, 0.5 * dt_, du, dv);
  diffuse(f.u, prey_);
  diffuse(f.v, predator_);
  diffuse(du, prey_);
  diffuse(dv, predator_);
  react_tangent(f, 0.5 * dt_, du, dv);
  f.t += dt_;
}

Field step(const Field& f, const Params& p, double diffusion, double dt) {
  Simulator sim(f.grid, p, diffusion, dt, Scheme::ImexEuler);
  Field g = f;
  sim.advance(g);
  return g;
}

double default_dt() { return 0.05; }

int default_points(const Params& p, double diffusion, double length) {
  int n = length >= 200.0 ? 512 : 64;
  if (const auto e = upper_coexisting(p)) {
    try {
      const BandEdges b = kpm_roots(*e, p, diffusion);
      const double wavelength = 2.0 * std::numbers::pi / std::sqrt(b.k_plus);
      n = std::max(n, static_cast<int>(std::ceil(4.0 * length / wavelength)) + 1);
    } catch (const Error&) {
    }
  }
  return n;
}

SpaceTimeRecord run(Field& f, const Simulator& sim, const RunOptions& opt) {
  SpaceTimeRecord rec;
  const double dx = f.grid.dx();
  const double dt = sim.dt();
  const long steps = std::lround(opt.duration / dt);
  const long every = std::max(1L, std::lround(opt.summary_every / dt));
  const long snap = opt.snapshot_every > 0.0 ? std::max(1L, std::lround(opt.snapshot_every / dt)) : 0;
  rec.min_value = std::min(*std::min_element(f.u.begin(), f.u.end()), *std::min_element(f.v.begin(), f.v.end()));
  auto summarize = [&](double rate) {
    rec.t.push_back(f.t);
    rec.u_av.push_back(spatial_mean(f.u, dx));
    rec.v_av.push_back(spatial_mean(f.v, dx));
    rec.var_u.push_back(spatial_variance(f.u, dx));
    rec.rate.push_back(rate);
    if (opt.on_summary) opt.on_summary(f);
  };
  summarize(NAN);
  if (snap && opt.on_snapshot) opt.on_snapshot(f);
  for (long s = 1; s <= steps; ++s) {
    const double rate = sim.advance(f);
    rec.min_value = std::min({rec.min_value, *std::min_element(f.u.begin(), f.u.end()),
                              *std::min_element(f.v.begin(), f.v.end())});
    if (s % every == 0) summarize(rate);
    if (snap && s % snap == 0 && opt.on_snapshot) opt.on_snapshot(f);
  }
  return rec;
}

double front_position(const Field& f, double level, Species s) {
  const auto& w = s == Species::Prey ? f.u : f.v;
  const int n = static_cast<int>(w.size());
  for (int i = n - 1; i > 0; --i) {
    const bool above = w[i - 1] >= level;
    if (above && w[i] < level) {
      const double frac = (w[i - 1] - level) / (w[i - 1] - w[i]);
      return f.grid.x(i - 1) + frac * f.grid.dx();
    }
    if (w[i] >= level) break;
  }
  fail(ErrorCode::NoCrossing, "field does not cross the level from the right");
}

double measure_front_speed(const std::vector<double>& times, const std::vector<double>& positions, double t_from,
                           double t_to) {
  double n = 0, st = 0, sx = 0, stt = 0, stx = 0;
  for (std::size_t i = 0; i < times.size() && i < positions.size(); ++i) {
    if (times[i] < t_from || times[i] > t_to || !std::isfinite(positions[i])) continue;
    n += 1;
    st += times[i];
    sx += positions[i];
    stt += times[i] * times[i];
    stx += times[i] * positions[i];
  }
  if (n < 2) fail(ErrorCode::NoCrossing, "fewer than two front positions in the window");
  const double den = n * stt - st * st;
  return (n * stx - st * sx) / den;
}

std::string_view to_string(Asymptotic a) noexcept {
  switch (a) {
    case Asymptotic::Homogeneous: return "homogeneous";
    case Asymptotic::StationaryPattern: return "stationary-pattern";
    case Asymptotic::Oscillatory: return "oscillatory";
    case Asymptotic::Irregular: return "irregular";
  }
  return "?";
}

Asymptotic classify_asymptotic(const SpaceTimeRecord& rec, double window) {
  if (rec.t.size() < 4) fail(ErrorCode::Inconclusive, "record too short");
  const double t_end = rec.t.back();
  if (t_end - rec.t.front() < window) fail(ErrorCode::Inconclusive, "record shorter than the window");
  const auto first = std::lower_bound(rec.t.begin(), rec.t.end(), t_end - window) - rec.t.begin();
  double rate = 0.0, var = 0.0;
  for (std::size_t i = first; i < rec.t.size(); ++i) {
    if (std::isfinite(rec.rate[i])) rate = std::max(rate, rec.rate[i]);
    var = std::max(var, rec.var_u[i]);
  }
  if (rate < 1e-6) return var > 1e-6 ? Asymptotic::StationaryPattern : Asymptotic::Homogeneous;
  std::vector<double> tail(rec.u_av.begin() + first, rec.u_av.end());
  const double dt = (rec.t.back() - rec.t[first]) / (tail.size() - 1);
  const auto peak = autocorrelation_peak(tail, dt);
  if (peak && peak->value > 0.9) return Asymptotic::Oscillatory;
  return Asymptotic::Irregular;
}

double half_max_support(const Field& f, double reference) {
  double m = 0.0;
  for (double x : f.u) m = std::max(m, std::abs(x - reference));
  if (m == 0.0) return 0.0;
  std::vector<double> ind(f.u.size());
  for (std::size_t i = 0; i < f.u.size(); ++i) ind[i] = std::abs(f.u[i] - reference) >= 0.5 * m ? 1.0 : 0.0;
  return spatial_mean(ind, f.grid.dx());
}

}  // namespace allee
