#include "allee/wave.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "allee/errors.hpp"
#include "allee/kinetics.hpp"
#include "allee/numerics/banded.hpp"
#include "allee/parallel.hpp"

namespace allee {

namespace {

using Mat4 = Eigen::Matrix4d;

Mat4 to_eigen(const WaveMatrix& m) {
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = m[i][j];
  return out;
}

void check_inputs(const Params& p, double diffusion, double speed) {
  p.validate();
  if (!(diffusion > 0.0) || !std::isfinite(diffusion)) fail(ErrorCode::InvalidArgument, "diffusion must be positive");
  if (!(speed > 0.0) || !std::isfinite(speed)) fail(ErrorCode::InvalidArgument, "wave speed must be positive");
}

// Rows of real vectors spanning the left eigenspace for eigenvalues selected by `pick`.
std::vector<Eigen::Vector4d> left_projectors(const Mat4& j, const std::function<bool(std::complex<double>)>& pick) {
  Eigen::EigenSolver<Mat4> es(j.transpose());
  std::vector<Eigen::Vector4d> rows;
  const auto vals = es.eigenvalues();
  const auto vecs = es.eigenvectors();
  for (int k = 0; k < 4; ++k) {
    if (!pick(vals(k))) continue;
    if (std::abs(vals(k).imag()) > 1e-12) {
      if (vals(k).imag() < 0.0) continue;  // conjugate partner already covered
      rows.push_back(vecs.col(k).real());
      rows.push_back(vecs.col(k).imag());
    } else {
      rows.push_back(vecs.col(k).real());
    }
  }
  return rows;
}

std::array<std::complex<double>, 4> sorted_eigenvalues(const Mat4& j) {
  Eigen::EigenSolver<Mat4> es(j, false);
  std::array<std::complex<double>, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = es.eigenvalues()(k);
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  return out;
}

// Resample a previous orbit onto `t` and stretch each component between the new end states.
std::vector<WaveState> remap_guess(const HeteroclinicOrbit& g, const WaveEnds& old_ends, const WaveEnds& ends,
                                   const std::vector<double>& t) {
  const WaveState a0 = old_ends.upstream(), b0 = old_ends.downstream();
  const WaveState a1 = ends.upstream(), b1 = ends.downstream();
  std::vector<WaveState> out(t.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double ti = std::clamp(t[i], g.t.front(), g.t.back());
    while (k + 2 < g.t.size() && g.t[k + 1] < ti) ++k;
    const double span = g.t[k + 1] - g.t[k];
    const double w = span > 0.0 ? (ti - g.t[k]) / span : 0.0;
    for (int c = 0; c < 4; ++c) {
      const double y = (1.0 - w) * g.states[k][c] + w * g.states[k + 1][c];
      const double den = b0[c] - a0[c];
      const double scale = std::abs(den) > 1e-14 ? (b1[c] - a1[c]) / den : 1.0;
      out[i][c] = a1[c] + (y - a0[c]) * scale;
    }
  }
  return out;
}

std::vector<WaveState> tanh_guess(const WaveEnds& ends, const std::vector<double>& t, double center) {
  const WaveState a = ends.upstream(), b = ends.downstream();
  std::vector<WaveState> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = 0.5 * (1.0 + std::tanh(0.1 * (t[i] - center)));
    for (int c = 0; c < 4; ++c) out[i][c] = a[c] + (b[c] - a[c]) * s;
  }
  return out;
}

struct Bvp {
  const Params& p;
  double diffusion, speed, h;
  int n;
  WaveState left_end, right_end;
  Eigen::Vector4d left_row;
  std::array<Eigen::Vector4d, 2> right_rows;
  double phase;

  int size() const { return 4 * n; }

  void residual(const std::vector<double>& y, std::vector<double>& r) const {
    r.assign(size(), 0.0);
    auto state = [&](int i) { return WaveState{y[4 * i], y[4 * i + 1], y[4 * i + 2], y[4 * i + 3]}; };
    const WaveState y0 = state(0), yn = state(n - 1);
    r[0] = 0.0;
    for (int c = 0; c < 4; ++c) r[0] += left_row(c) * (y0[c] - left_end[c]);
    r[1] = y0[2] - phase;
    WaveState fa = tw_rhs(y0, p, diffusion, speed);
    for (int i = 0; i + 1 < n; ++i) {
      const WaveState ya = state(i), yb = state(i + 1);
      const WaveState fb = tw_rhs(yb, p, diffusion, speed);
      for (int c = 0; c < 4; ++c) r[2 + 4 * i + c] = yb[c] - ya[c] - 0.5 * h * (fa[c] + fb[c]);
      fa = fb;
    }
    for (int k = 0; k < 2; ++k) {
      double s = 0.0;
      for (int c = 0; c < 4; ++c) s += right_rows[k](c) * (yn[c] - right_end[c]);
      r[4 * n - 2 + k] = s;
    }
  }

  num::BandedMatrix jacobian(const std::vector<double>& y) const {
    num::BandedMatrix a(size(), 5, 5);
    for (int c = 0; c < 4; ++c) a(0, c) = left_row(c);
    a(1, 2) = 1.0;
    auto state = [&](int i) { return WaveState{y[4 * i], y[4 * i + 1], y[4 * i + 2], y[4 * i + 3]}; };
    WaveMatrix ja = tw_jacobian(state(0), p, diffusion, speed);
    for (int i = 0; i + 1 < n; ++i) {
      const WaveMatrix jb = tw_jacobian(state(i + 1), p, diffusion, speed);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          const double id = r == c ? 1.0 : 0.0;
          a(2 + 4 * i + r, 4 * i + c) = -id - 0.5 * h * ja[r][c];
          a(2 + 4 * i + r, 4 * (i + 1) + c) = id - 0.5 * h * jb[r][c];
        }
      ja = jb;
    }
    for (int k = 0; k < 2; ++k)
      for (int c = 0; c < 4; ++c) a(4 * n - 2 + k, 4 * (n - 1) + c) = right_rows[k](c);
    return a;
  }
};

double inf_norm(const std::vector<double>& r) {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

// Largest reversal of a series expected to move in direction `sign` (+1 increasing, -1 decreasing).
double reversal(const std::vector<WaveState>& s, int comp, int sign, std::size_t from, std::size_t to) {
  double best = 0.0;
  double extreme = sign * s[from][comp];
  for (std::size_t i = from; i < to; ++i) {
    const double x = sign * s[i][comp];
    extreme = std::max(extreme, x);
    best = std::max(best, extreme - x);
  }
  return best;
}

}  // namespace

WaveState tw_rhs(const WaveState& s, const Params& p, double diffusion, double speed) {
  const double c2 = speed * speed;
  const Rates f = kinetics_raw(s[0], s[2], p);
  return {c2 * (s[0] - s[1]), f.prey, c2 / diffusion * (s[2] - s[3]), f.predator};
}

WaveMatrix tw_jacobian(const WaveState& s, const Params& p, double diffusion, double speed) {
  const double c2 = speed * speed;
  const Mat2 j = jacobian_raw(s[0], s[2], p);
  WaveMatrix m{};
  m[0] = {c2, -c2, 0.0, 0.0};
  m[1] = {j.a, 0.0, j.b, 0.0};
  m[2] = {0.0, 0.0, c2 / diffusion, -c2 / diffusion};
  m[3] = {j.c, 0.0, j.d, 0.0};
  return m;
}

WaveEnds wave_ends(const Params& p, double diffusion) {
  p.validate();
  if (!(diffusion > 0.0)) fail(ErrorCode::InvalidArgument, "diffusion must be positive");
  WaveEnds e;
  e.u1 = axial_roots(p).upper;
  const auto star = upper_coexisting(p);
  if (!star) fail(ErrorCode::NotApplicable, "no coexisting state for these parameters");
  e.interior = *star;
  e.j1 = p.growth * e.u1 * (1.0 - 2.0 * e.u1);
  e.j2 = e.u1 / (p.saturation + e.u1);
  e.j3 = (p.conversion * e.j2 - 1.0) / diffusion;
  return e;
}

double c_min(const Params& p, double diffusion) {
  const WaveEnds e = wave_ends(p, diffusion);
  if (e.j3 <= 0.0) fail(ErrorCode::NotApplicable, "predator cannot invade the prey-only state");
  return 2.0 * diffusion * std::sqrt(e.j3);
}

EndSpectra end_state_spectra(const Params& p, double diffusion, double speed) {
  check_inputs(p, diffusion, speed);
  const WaveEnds e = wave_ends(p, diffusion);
  const double c = speed, c2 = c * c, d = diffusion;
  EndSpectra out;
  const std::complex<double> r12 = std::sqrt(std::complex<double>(c2 - 4.0 * e.j1));
  const std::complex<double> r34 = std::sqrt(std::complex<double>(c2 - 4.0 * d * d * e.j3));
  out.upstream_closed = {(c2 + c * r12) / 2.0, (c2 - c * r12) / 2.0, (c2 + c * r34) / (2.0 * d),
                         (c2 - c * r34) / (2.0 * d)};
  out.upstream_spiral = c2 - 4.0 * d * d * e.j3 < 0.0;

  // Match the numeric eigenvalues to the closed-form ordering.
  auto numeric = sorted_eigenvalues(to_eigen(tw_jacobian(e.upstream(), p, d, c)));
  std::array<bool, 4> used{};
  for (int k = 0; k < 4; ++k) {
    int best = -1;
    for (int m = 0; m < 4; ++m)
      if (!used[m] && (best < 0 || std::abs(numeric[m] - out.upstream_closed[k]) <
                                       std::abs(numeric[best] - out.upstream_closed[k])))
        best = m;
    used[best] = true;
    out.upstream_numeric[k] = numeric[best];
  }

  out.downstream = sorted_eigenvalues(to_eigen(tw_jacobian(e.downstream(), p, d, c)));
  for (const auto& z : out.downstream) {
    if (z.real() >= 0.0) continue;
    ++out.downstream_stable;
    if (std::abs(z.imag()) > 1e-12) out.downstream_complex = true;
  }
  return out;
}

double wedge_slope(double diffusion, double speed) {
  if (!(diffusion > 0.0) || !(speed > 0.0)) fail(ErrorCode::InvalidArgument, "diffusion and speed must be positive");
  const double c2 = speed * speed;
  return (c2 + std::sqrt(c2 * c2 + 4.0 * diffusion * c2)) / (2.0 * c2);
}

HeteroclinicOrbit shoot_heteroclinic(const Params& p, double diffusion, double speed, const ShootOptions& opt,
                                     const HeteroclinicOrbit* guess) {
  check_inputs(p, diffusion, speed);
  if (opt.nodes < 16 || !(opt.horizon > 0.0) || !(opt.launch > 0.0))
    fail(ErrorCode::InvalidArgument, "invalid wave solver options");
  const WaveEnds ends = wave_ends(p, diffusion);

  HeteroclinicOrbit orbit;
  orbit.growth = p.growth;
  orbit.speed = speed;
  const int n = opt.nodes;
  const double h = opt.horizon / (n - 1);
  orbit.t.resize(n);
  for (int i = 0; i < n; ++i) orbit.t[i] = i * h;

  const auto left = left_projectors(to_eigen(tw_jacobian(ends.upstream(), p, diffusion, speed)),
                                    [](std::complex<double> z) { return z.real() < 0.0; });
  const auto right = left_projectors(to_eigen(tw_jacobian(ends.downstream(), p, diffusion, speed)),
                                     [](std::complex<double> z) { return z.real() > 0.0; });
  if (left.size() != 1 || right.size() != 2)
    fail(ErrorCode::NotApplicable, "end states do not have the saddle structure of a connecting orbit");

  Bvp bvp{p, diffusion, speed, h, n, ends.upstream(), ends.downstream(), left[0], {right[0], right[1]},
          opt.launch * ends.u1};

  std::vector<WaveState> init;
  if (guess && guess->states.size() >= 2) {
    Params gp = p;
    gp.growth = guess->growth;
    init = remap_guess(*guess, wave_ends(gp, diffusion), ends, orbit.t);
  } else {
    init = tanh_guess(ends, orbit.t, opt.horizon / 6.0);
  }
  std::vector<double> y(4 * n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < 4; ++c) y[4 * i + c] = init[i][c];

  std::vector<double> r, trial, rt;
  bvp.residual(y, r);
  double norm = inf_norm(r);
  for (int it = 0; it < opt.max_iter && norm > opt.tol; ++it) {
    num::BandedLU lu(bvp.jacobian(y));
    if (lu.singular()) break;
    std::vector<double> dy = lu.solve(r);
    double lambda = 1.0;
    bool accepted = false;
    for (; lambda >= 1.0 / 64.0; lambda *= 0.5) {
      trial = y;
      for (std::size_t k = 0; k < y.size(); ++k) trial[k] -= lambda * dy[k];
      bvp.residual(trial, rt);
      const double nt = inf_norm(rt);
      if (std::isfinite(nt) && nt < (1.0 - 0.25 * lambda) * norm) {
        y.swap(trial);
        r.swap(rt);
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  orbit.converged = norm <= opt.tol;
  orbit.states.resize(n);
  for (int i = 0; i < n; ++i) orbit.states[i] = {y[4 * i], y[4 * i + 1], y[4 * i + 2], y[4 * i + 3]};
  if (!orbit.converged) return orbit;

  const WaveState target = ends.downstream();
  const double vs = ends.interior.v;
  const double tol = 1e-8 * std::max(1.0, vs);

  // Last time the orbit is outside the settling ball.
  std::size_t settle = 0;
  for (std::size_t i = 0; i < orbit.states.size(); ++i) {
    double dist = 0.0;
    for (int c = 0; c < 4; ++c) dist = std::max(dist, std::abs(orbit.states[i][c] - target[c]));
    if (dist > opt.settle_radius) settle = i + 1;
  }
  const bool settled = settle < orbit.states.size() && orbit.t.back() - orbit.t[std::min(settle, orbit.t.size() - 1)] >= opt.settle_time;

  double min_w = 0.0;
  bool wedge = true;
  const double m = wedge_slope(diffusion, speed);
  for (const auto& s : orbit.states) {
    min_w = std::min(min_w, s[2]);
    if (s[0] < -tol || s[0] > ends.u1 + tol) wedge = false;
    if (s[3] < 0.5 * s[2] - tol || s[3] > m * s[2] + tol) wedge = false;
  }
  orbit.wedge_ok = wedge && min_w >= -tol;
  orbit.found = settled && min_w >= -tol;

  // Monotonicity over the trailing 80% of the transit up to settling.
  const std::size_t end = std::max<std::size_t>(settle, 2);
  const std::size_t from = end / 5;
  orbit.oscillation = std::max(reversal(orbit.states, 0, -1, from, orbit.states.size()),
                               reversal(orbit.states, 2, +1, from, orbit.states.size()));
  orbit.monotone = orbit.oscillation <= opt.oscillation_tol;
  return orbit;
}

std::string_view to_string(WaveClass c) noexcept {
  switch (c) {
    case WaveClass::NoWave: return "no-wave";
    case WaveClass::Monotonic: return "monotonic";
    case WaveClass::NonMonotonic: return "non-monotonic";
    case WaveClass::Unknown: return "unknown";
  }
  return "unknown";
}

int class_code(WaveClass c) noexcept {
  switch (c) {
    case WaveClass::NoWave: return 0;
    case WaveClass::Monotonic: return 1;
    case WaveClass::NonMonotonic: return 2;
    case WaveClass::Unknown: return 3;
  }
  return 3;
}

namespace {

// Moves a converged orbit to (growth, speed), subdividing the parameter step on failure.
std::optional<HeteroclinicOrbit> track(const Params& base, double diffusion, const HeteroclinicOrbit& from,
                                       double growth, double speed, const ShootOptions& opt, int depth = 0) {
  Params p = base.with_growth(growth);
  HeteroclinicOrbit o = shoot_heteroclinic(p, diffusion, speed, opt, &from);
  if (o.converged) return o;
  if (depth >= 5) return std::nullopt;
  const double gm = 0.5 * (from.growth + growth), cm = 0.5 * (from.speed + speed);
  auto mid = track(base, diffusion, from, gm, cm, opt, depth + 1);
  if (!mid) return std::nullopt;
  return track(base, diffusion, *mid, growth, speed, opt, depth + 1);
}

WaveClass classify_orbit(const HeteroclinicOrbit& o) {
  if (!o.converged) return WaveClass::Unknown;
  if (!o.found) return WaveClass::Unknown;
  return o.monotone ? WaveClass::Monotonic : WaveClass::NonMonotonic;
}

}  // namespace

std::vector<WaveScanCell> scan_plane(const Params& p, double diffusion, const std::vector<double>& growths,
                                     const std::vector<double>& speeds, const ScanOptions& opt) {
  if (growths.empty() || speeds.empty()) fail(ErrorCode::InvalidArgument, "empty scan grid");
  const std::size_t ng = growths.size(), nc = speeds.size();
  std::vector<WaveScanCell> cells(ng * nc);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      auto& cell = cells[i * nc + j];
      cell.growth = growths[i];
      cell.speed = speeds[j];
      const Params q = p.with_growth(growths[i]);
      cell.c_min = c_min(q, diffusion);
      cell.interior_complex = end_state_spectra(q, diffusion, speeds[j]).downstream_complex;
      cell.cls = speeds[j] < cell.c_min ? WaveClass::NoWave : WaveClass::Unknown;
    }

  // Reference orbit, then a chain in speed at the reference growth.
  const Params ref = p.with_growth(opt.reference_growth);
  HeteroclinicOrbit seed = shoot_heteroclinic(ref, diffusion, opt.reference_speed, opt.shoot);
  if (!seed.converged) fail(ErrorCode::NoConvergence, "reference travelling wave did not converge");
  const double ref_cmin = c_min(ref, diffusion);

  std::vector<std::optional<HeteroclinicOrbit>> chain(nc);
  std::vector<std::size_t> order(nc);
  for (std::size_t j = 0; j < nc; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return speeds[a] < speeds[b]; });
  auto run_chain = [&](auto begin, auto end) {
    std::optional<HeteroclinicOrbit> prev = seed;
    for (auto it = begin; it != end; ++it) {
      const double c = std::max(speeds[*it], ref_cmin);
      if (prev) prev = track(p, diffusion, *prev, opt.reference_growth, c, opt.shoot);
      chain[*it] = prev;
    }
  };
  const auto split = std::lower_bound(order.begin(), order.end(), opt.reference_speed,
                                      [&](std::size_t j, double c) { return speeds[j] < c; });
  run_chain(split, order.end());
  {
    std::vector<std::size_t> down(order.begin(), split);
    std::reverse(down.begin(), down.end());
    run_chain(down.begin(), down.end());
  }

  // Each speed column continues in growth away from the reference value.
  std::vector<std::size_t> by_growth(ng);
  for (std::size_t i = 0; i < ng; ++i) by_growth[i] = i;
  std::sort(by_growth.begin(), by_growth.end(), [&](auto a, auto b) { return growths[a] < growths[b]; });
  const auto gsplit = std::lower_bound(by_growth.begin(), by_growth.end(), opt.reference_growth,
                                       [&](std::size_t i, double g) { return growths[i] < g; });
  parallel_for(nc, opt.jobs, [&](std::size_t j) {
    if (!chain[j]) return;
    auto sweep = [&](auto begin, auto end) {
      std::optional<HeteroclinicOrbit> prev = chain[j];
      for (auto it = begin; it != end && prev; ++it) {
        auto& cell = cells[*it * nc + j];
        if (cell.cls == WaveClass::NoWave) continue;
        auto next = track(p, diffusion, *prev, growths[*it], speeds[j], opt.shoot);
        if (!next) break;
        cell.cls = classify_orbit(*next);
        cell.orbit_oscillation = next->oscillation;
        if (cell.cls == WaveClass::Monotonic && cell.interior_complex) cell.cls = WaveClass::NonMonotonic;
        prev = std::move(next);
      }
    };
    sweep(gsplit, by_growth.end());
    std::vector<std::size_t> down(by_growth.begin(), gsplit);
    std::reverse(down.begin(), down.end());
    sweep(down.begin(), down.end());
  });
  return cells;
}

std::optional<double> monotonicity_boundary(const std::vector<WaveScanCell>& cells) {
  std::vector<double> speeds;
  for (const auto& c : cells) speeds.push_back(c.speed);
  std::sort(speeds.begin(), speeds.end());
  speeds.erase(std::unique(speeds.begin(), speeds.end()), speeds.end());
  double sum = 0.0;
  int count = 0;
  for (double c : speeds) {
    std::vector<const WaveScanCell*> col;
    for (const auto& cell : cells)
      if (cell.speed == c && (cell.cls == WaveClass::Monotonic || cell.cls == WaveClass::NonMonotonic))
        col.push_back(&cell);
    std::sort(col.begin(), col.end(), [](auto a, auto b) { return a->growth < b->growth; });
    for (std::size_t k = col.size(); k-- > 1;) {
      if (col[k]->cls != col[k - 1]->cls) {
        sum += 0.5 * (col[k]->growth + col[k - 1]->growth);
        ++count;
        break;
      }
    }
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

}  // namespace allee
