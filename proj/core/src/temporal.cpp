#include "allee/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "allee/errors.hpp"
#include "allee/kinetics.hpp"
#include "allee/numerics/dopri5.hpp"
#include "allee/parallel.hpp"

namespace allee {

Trajectory integrate_ode(Point2 ic, const Params& p, double duration, const OdeOptions& opt) {
  p.validate();
  if (!(ic[0] >= 0.0 && ic[1] >= 0.0) || !std::isfinite(ic[0]) || !std::isfinite(ic[1]))
    fail(ErrorCode::InvalidArgument, "initial condition must be finite and non-negative");
  if (!(opt.tol >= 1e-12 && opt.tol <= 1e-3)) fail(ErrorCode::InvalidArgument, "tolerance outside [1e-12, 1e-3]");
  if (!(duration > 0.0) || !(opt.sample_dt > 0.0)) fail(ErrorCode::InvalidArgument, "duration and sample step must be positive");

  Trajectory tr;
  auto rhs = [&](double, const Point2& y, Point2& dy) {
    const Rates r = kinetics_raw(y[0], y[1], p);
    dy = {r.prey, r.predator};
  };
  const double clip = opt.tol;
  auto project = [clip](Point2& y) {
    for (double& x : y)
      if (x < 0.0 && x > -clip) x = 0.0;
  };
  bool extinct = false, diverged = false;
  auto sample = [&](double t, const Point2& y) {
    tr.times.push_back(t);
    tr.states.push_back(y);
    if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || std::max(y[0], y[1]) > 1e6) {
      diverged = true;
      return false;
    }
    if (opt.stop_on_extinction && std::max(y[0], y[1]) < opt.extinction_level) {
      extinct = true;
      return false;
    }
    return true;
  };
  num::Dopri5Options o;
  o.rtol = opt.tol;
  o.atol = opt.tol * 1e-3;
  o.hmax = opt.sample_dt * 50.0;
  Point2 y = ic;
  const auto st = num::dopri5<2>(rhs, y, 0.0, duration, opt.sample_dt, o, project, sample);
  if (st.status == num::Dopri5Status::StepSizeUnderflow)
    fail(ErrorCode::StepSizeUnderflow, "step size collapsed at t=" + std::to_string(st.t));
  if (diverged || st.status == num::Dopri5Status::NonFinite) {
    tr.terminal = Terminal::Diverged;
  } else if (extinct) {
    tr.terminal = Terminal::ConvergedToPoint;
  } else {
    const Point2 last = tr.states.back();
    const Rates r = kinetics_raw(last[0], last[1], p);
    tr.terminal = std::max(std::abs(r.prey), std::abs(r.predator)) < 1e-8 ? Terminal::ConvergedToPoint
                                                                        : Terminal::ReachedT;
  }
  return tr;
}

AttractorSummary attractor_summary(const Trajectory& tr, double transient) {
  if (tr.states.empty()) fail(ErrorCode::InvalidArgument, "empty trajectory");
  const Point2 last = tr.states.back();
  AttractorSummary s;
  if (std::max(last[0], last[1]) < 1e-8 ||
      (tr.terminal == Terminal::ConvergedToPoint && std::max(last[0], last[1]) < 1e-6)) {
    s.kind = AttractorKind::Extinction;
    s.u_min = s.u_max = last[0];
    return s;
  }
  const auto first = std::lower_bound(tr.times.begin(), tr.times.end(), transient) - tr.times.begin();
  const std::size_t n = tr.times.size();
  if (n - first < 5) fail(ErrorCode::Inconclusive, "trajectory too short after the transient");

  double umin = INFINITY, umax = -INFINITY, mean = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    umin = std::min(umin, tr.states[i][0]);
    umax = std::max(umax, tr.states[i][0]);
    mean += tr.states[i][0];
  }
  mean /= static_cast<double>(n - first);
  if ((umax - umin) <= 1e-4 * std::max(std::abs(mean), 1e-12)) {
    s.kind = AttractorKind::FixedPoint;
    s.u_min = s.u_max = last[0];
    return s;
  }

  // local maxima of u, with parabolic refinement of time and height
  std::vector<double> peak_t, peak_h;
  for (std::size_t i = first + 1; i + 1 < n; ++i) {
    const double a = tr.states[i - 1][0], b = tr.states[i][0], c = tr.states[i + 1][0];
    if (b > a && b >= c) {
      const double den = a - 2 * b + c;
      const double off = den != 0.0 ? 0.5 * (a - c) / den : 0.0;
      const double dt = tr.times[i + 1] - tr.times[i];
      peak_t.push_back(tr.times[i] + off * dt);
      peak_h.push_back(b - 0.25 * (a - c) * off);
    }
  }
  if (peak_t.size() < 3) fail(ErrorCode::Inconclusive, "fewer than three oscillation peaks after the transient");
  std::vector<double> gaps;
  for (std::size_t i = 1; i < peak_t.size(); ++i) gaps.push_back(peak_t[i] - peak_t[i - 1]);
  const double gmean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
  double var = 0.0;
  for (double g : gaps) var += (g - gmean) * (g - gmean);
  const double cv = std::sqrt(var / gaps.size()) / gmean;
  const auto [hlo, hhi] = std::minmax_element(peak_h.begin(), peak_h.end());
  const bool steady_height = (*hhi - *hlo) < 0.05 * (umax - umin);
  if (cv < 0.02 && steady_height) {
    s.kind = AttractorKind::LimitCycle;
    s.period = gmean;
    s.u_min = umin;
    s.u_max = umax;
    return s;
  }
  fail(ErrorCode::Inconclusive, "oscillation is neither settled nor periodic");
}

bool survives(const Params& p, double growth, const HeteroclinicOptions& opt) {
  const Params q = p.with_growth(growth);
  const auto e = upper_coexisting(q);
  if (!e) return false;
  OdeOptions o;
  o.tol = opt.tol;
  o.sample_dt = 1.0;
  o.stop_on_extinction = true;
  o.extinction_level = opt.extinction_level;
  const Trajectory tr = integrate_ode({e->u + opt.offset[0], e->v + opt.offset[1]}, q, opt.horizon, o);
  const Point2 last = tr.states.back();
  return !(std::max(last[0], last[1]) < opt.extinction_level);
}

double heteroclinic_threshold(const Params& p, double lo, double hi, const HeteroclinicOptions& opt) {
  if (lo > hi) std::swap(lo, hi);
  const bool slo = survives(p, lo, opt), shi = survives(p, hi, opt);
  if (slo == shi) fail(ErrorCode::BracketInvalid, "both bracket ends classify identically");
  while (hi - lo > opt.width) {
    const double mid = 0.5 * (lo + hi);
    if (survives(p, mid, opt) == shi) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<DiagramRow> bifurcation_diagram(const Params& p, const std::vector<double>& growths,
                                            const DiagramOptions& opt) {
  std::vector<std::vector<DiagramRow>> per(growths.size());
  parallel_for(growths.size(), opt.jobs, [&](std::size_t k) {
    const double g = growths[k];
    const Params q = p.with_growth(g);
    std::vector<DiagramRow> rows;
    try {
      rows.push_back({g, 0, 0.0, trivial_equilibrium(q).stability});
      for (const auto& e : axial_equilibria(q))
        rows.push_back({g, e.kind == EquilibriumKind::Axial1 ? 1 : 2, e.u, e.stability});
      const auto inner = coexisting_equilibria(q);
      for (std::size_t i = 0; i < inner.size(); ++i) {
        const auto& e = inner[i];
        DiagramRow r{g, 3 + static_cast<int>(i), e.u, e.stability};
        if (e.det > 0.0 && e.trace > 0.0) {
          OdeOptions o;
          o.sample_dt = 0.05;
          o.stop_on_extinction = true;
          const auto tr = integrate_ode({e.u + 1e-3, e.v}, q, opt.cycle_horizon, o);
          try {
            const auto s = attractor_summary(tr, opt.cycle_transient);
            if (s.kind == AttractorKind::LimitCycle) {
              r.cycle_umin = s.u_min;
              r.cycle_umax = s.u_max;
            }
          } catch (const Error&) {
          }
        }
        rows.push_back(r);
      }
    } catch (const Error&) {
      rows.clear();  // gap at this growth value
    }
    per[k] = std::move(rows);
  });
  std::vector<DiagramRow> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace allee
