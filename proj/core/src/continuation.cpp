#include "allee/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "allee/errors.hpp"
#include "allee/kinetics.hpp"
#include "allee/linear.hpp"
#include "allee/numerics/arnoldi.hpp"

namespace allee {

std::vector<double> pack(const Field& f) {
  std::vector<double> x(2 * f.u.size());
  for (std::size_t i = 0; i < f.u.size(); ++i) {
    x[2 * i] = f.u[i];
    x[2 * i + 1] = f.v[i];
  }
  return x;
}

Field unpack(const std::vector<double>& x, const Grid& grid) {
  Field f = constant_field(grid, 0.0, 0.0);
  for (int i = 0; i < grid.points; ++i) {
    f.u[i] = x[2 * i];
    f.v[i] = x[2 * i + 1];
  }
  return f;
}

namespace {

void check_size(const std::vector<double>& x, const SteadyProblem& prob) {
  if (static_cast<int>(x.size()) != prob.unknowns()) fail(ErrorCode::InvalidArgument, "solution vector has the wrong length");
}

}  // namespace

std::vector<double> residual(const std::vector<double>& x, double growth, const SteadyProblem& prob) {
  check_size(x, prob);
  const int n = prob.grid.points;
  const double h2 = 1.0 / (prob.grid.dx() * prob.grid.dx());
  const Params p = prob.p.with_growth(growth);
  std::vector<double> r(x.size());
  for (int i = 0; i < n; ++i) {
    const int l = i > 0 ? i - 1 : 1, m = i < n - 1 ? i + 1 : n - 2;
    const double u = x[2 * i], v = x[2 * i + 1];
    const Rates f = kinetics_raw(u, v, p);
    r[2 * i] = h2 * (x[2 * l] - 2 * u + x[2 * m]) + f.prey;
    r[2 * i + 1] = prob.diffusion * h2 * (x[2 * l + 1] - 2 * v + x[2 * m + 1]) + f.predator;
  }
  return r;
}

num::BandedMatrix jacobian_banded(const std::vector<double>& x, double growth, const SteadyProblem& prob) {
  check_size(x, prob);
  const int n = prob.grid.points;
  const double h2 = 1.0 / (prob.grid.dx() * prob.grid.dx());
  const double d = prob.diffusion;
  const Params p = prob.p.with_growth(growth);
  num::BandedMatrix a(2 * n, 2, 2);
  for (int i = 0; i < n; ++i) {
    const Mat2 j = jacobian_raw(x[2 * i], x[2 * i + 1], p);
    const int ru = 2 * i, rv = 2 * i + 1;
    a(ru, ru) = -2 * h2 + j.a;
    a(ru, rv) = j.b;
    a(rv, ru) = j.c;
    a(rv, rv) = -2 * d * h2 + j.d;
    if (i == 0) {
      a(ru, ru + 2) = 2 * h2;
      a(rv, rv + 2) = 2 * d * h2;
    } else if (i == n - 1) {
      a(ru, ru - 2) = 2 * h2;
      a(rv, rv - 2) = 2 * d * h2;
    } else {
      a(ru, ru - 2) = h2;
      a(ru, ru + 2) = h2;
      a(rv, rv - 2) = d * h2;
      a(rv, rv + 2) = d * h2;
    }
  }
  return a;
}

std::vector<double> growth_derivative(const std::vector<double>& x, const SteadyProblem& prob) {
  check_size(x, prob);
  std::vector<double> g(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); i += 2) g[i] = x[i] * x[i] * (1.0 - x[i]);
  return g;
}

double max_norm(const std::vector<double>& r) {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

double prey_l2_norm(const std::vector<double>& x, const SteadyProblem& prob) {
  std::vector<double> u(prob.grid.points);
  for (int i = 0; i < prob.grid.points; ++i) u[i] = x[2 * i];
  return l2_norm(u, prob.grid.dx());
}

std::vector<double> newton_correct(std::vector<double> x, double growth, const SteadyProblem& prob,
                                   const NewtonOptions& opt) {
  std::vector<double> r = residual(x, growth, prob);
  double rn = max_norm(r);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (rn < opt.tol) return x;
    const num::BandedLU lu(jacobian_banded(x, growth, prob));
    if (lu.singular()) fail(ErrorCode::SingularJacobian, "Jacobian is singular");
    for (double& v : r) v = -v;
    lu.solve(std::span<double>(r));
    // damping: halve the step until the residual decreases
    double lambda = 1.0;
    std::vector<double> trial(x.size());
    for (int k = 0; k < 12; ++k) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + lambda * r[i];
      const auto rt = residual(trial, growth, prob);
      const double tn = max_norm(rt);
      if (std::isfinite(tn) && (tn < rn || k == 11)) {
        x.swap(trial);
        r = rt;
        rn = tn;
        break;
      }
      lambda *= 0.5;
    }
  }
  if (rn < opt.tol) return x;
  fail(ErrorCode::NoConvergence, "Newton did not converge, residual " + std::to_string(rn));
}

StabilityReport solution_stability(const std::vector<double>& x, double growth, const SteadyProblem& prob,
                                   int n_eigs) {
  const num::BandedMatrix a = jacobian_banded(x, growth, prob);
  const double shift = num::gershgorin_right_edge(a) + 0.05;
  const int n = prob.unknowns();
  int krylov = std::min(n, std::max(60, 3 * n_eigs));
  for (int attempt = 0; attempt < 3; ++attempt) {
    const auto ritz = num::shift_invert_arnoldi(a, shift, krylov);
    StabilityReport rep;
    bool suspicious = false;
    for (const auto& r : ritz) {
      const bool converged = r.residual < 1e-7;
      if (!converged) {
        if (r.value.real() > 1e-8) suspicious = true;
        continue;
      }
      if (r.value.real() > 1e-8) ++rep.n_unstable;
      if (static_cast<int>(rep.leading.size()) < n_eigs) rep.leading.push_back(r.value);
    }
    if (!suspicious) return rep;
    if (krylov >= n) break;
    krylov = std::min(n, 2 * krylov);
  }
  fail(ErrorCode::EigSolverStall, "unconverged Ritz values in the right half plane");
}

std::string tag_string(unsigned tags) {
  std::string s;
  auto add = [&](unsigned bit, const char* name) {
    if (tags & bit) s += s.empty() ? name : std::string("|") + name;
  };
  add(TagStart, "Start");
  add(TagFold, "Fold");
  add(TagBP, "BP");
  add(TagEnd, "End");
  return s.empty() ? "-" : s;
}

namespace {

// Arclength machinery in the inner product <a, b> = xi * a_x . b_x + a_g b_g.
struct Arclength {
  const SteadyProblem& prob;
  double xi;
  double tol;

  double dot(const std::vector<double>& a, double ag, const std::vector<double>& b, double bg) const {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return xi * s + ag * bg;
  }

  struct Tangent {
    std::vector<double> x;
    double g = 0.0;
    int det_sign = 0;  // sign of det of the bordered Jacobian
  };

  // Tangent at (x, g), oriented to have positive product with (ref_x, ref_g).
  Tangent tangent(const std::vector<double>& x, double g, const std::vector<double>& ref_x, double ref_g) const {
    const num::BandedLU lu(jacobian_banded(x, g, prob));
    if (lu.singular()) fail(ErrorCode::SingularJacobian, "Jacobian singular while computing a tangent");
    auto b = lu.solve(growth_derivative(x, prob));
    Tangent t;
    t.x.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) t.x[i] = -b[i];
    t.g = 1.0;
    const double norm = std::sqrt(dot(t.x, t.g, t.x, t.g));
    double sgn = 1.0 / norm;
    if (dot(t.x, t.g, ref_x, ref_g) < 0.0) sgn = -sgn;
    for (double& v : t.x) v *= sgn;
    t.g *= sgn;
    t.det_sign = lu.det_sign() * (t.g > 0 ? 1 : -1);
    return t;
  }

  // Newton on [F; <tau, z - z_pred>] = 0. Returns iterations used or -1.
  int correct(std::vector<double>& x, double& g, const std::vector<double>& tx, double tg, int max_iter = 12) const {
    const std::vector<double> xp = x;
    const double gp = g;
    for (int it = 0; it <= max_iter; ++it) {
      auto F = residual(x, g, prob);
      std::vector<double> dx(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] - xp[i];
      const double c = dot(tx, tg, dx, g - gp);
      const double fn = max_norm(F);
      if (!std::isfinite(fn)) return -1;
      if (fn < tol && std::abs(c) < tol) return it;
      if (it == max_iter) break;
      const num::BandedLU lu(jacobian_banded(x, g, prob));
      if (lu.singular()) return -1;
      for (double& v : F) v = -v;
      lu.solve(std::span<double>(F));  // a
      auto b = lu.solve(growth_derivative(x, prob));
      double ta = 0.0, tb = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        ta += tx[i] * F[i];
        tb += tx[i] * b[i];
      }
      const double den = tg - xi * tb;
      if (den == 0.0) return -1;
      const double dg = (-c - xi * ta) / den;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += F[i] - b[i] * dg;
      g += dg;
      if (!std::isfinite(g)) return -1;
    }
    return -1;
  }
};

BranchPoint make_point(const std::vector<double>& x, double g, const SteadyProblem& prob, const ContinuationOptions& opt,
                       unsigned tags) {
  BranchPoint bp;
  bp.growth = g;
  bp.x = x;
  bp.l2norm = prey_l2_norm(x, prob);
  bp.tags = tags;
  if (opt.stability) {
    try {
      bp.n_unstable = solution_stability(x, g, prob, opt.n_eigs).n_unstable;
    } catch (const Error&) {
      bp.n_unstable = -1;
    }
  }
  return bp;
}

}  // namespace

Branch continue_branch(const std::vector<double>& x0, double growth0, const SteadyProblem& prob,
                       const ContinuationOptions& opt) {
  check_size(x0, prob);
  const double ds_max = opt.ds_max > 0.0 ? opt.ds_max : 4.0 * opt.ds0;
  Arclength arc{prob, 1.0 / prob.unknowns(), opt.tol};

  std::vector<double> x = newton_correct(x0, growth0, prob, {opt.tol, 25});
  double g = growth0;
  Arclength::Tangent tau;
  if (opt.tangent_hint) {
    const auto& h = *opt.tangent_hint;
    tau = arc.tangent(x, g, std::vector<double>(h.begin(), h.end() - 1), h.back());
  } else {
    tau = arc.tangent(x, g, std::vector<double>(x.size(), 0.0), opt.direction >= 0 ? 1.0 : -1.0);
  }

  Branch br;
  br.points.push_back(make_point(x, g, prob, opt, TagStart));
  double ds = opt.ds0;
  for (int step = 0; step < opt.steps; ++step) {
    std::vector<double> xn(x.size());
    double gn = 0.0;
    int iters = -1;
    while (true) {
      for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] + ds * tau.x[i];
      gn = g + ds * tau.g;
      iters = arc.correct(xn, gn, tau.x, tau.g);
      if (iters >= 0) break;
      ds *= 0.5;
      if (ds < opt.ds_min) break;
    }
    if (iters < 0) {
      if (br.points.size() == 1) fail(ErrorCode::StepUnderflow, "arclength step fell below the minimum at the start");
      br.stop_reason = "step underflow";
      break;
    }
    Arclength::Tangent tn;
    try {
      tn = arc.tangent(xn, gn, tau.x, tau.g);
    } catch (const Error&) {
      br.stop_reason = "singular Jacobian";
      break;
    }

    unsigned tags = TagNone;
    const bool fold = (tn.g > 0) != (tau.g > 0);
    const bool bp = !fold && tn.det_sign != tau.det_sign && tn.det_sign != 0 && tau.det_sign != 0;
    if (fold) tags |= TagFold;
    if (bp) tags |= TagBP;
    if ((fold || bp) && opt.locate) {
      // bisection in arclength on the relevant sign test
      double lo = 0.0, hi = ds;
      std::vector<double> xs = xn;
      double gs = gn;
      for (int k = 0; k < 40 && hi - lo > 1e-10; ++k) {
        const double mid = 0.5 * (lo + hi);
        std::vector<double> xm(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) xm[i] = x[i] + mid * tau.x[i];
        double gm = g + mid * tau.g;
        if (arc.correct(xm, gm, tau.x, tau.g) < 0) break;
        Arclength::Tangent tm;
        try {
          tm = arc.tangent(xm, gm, tau.x, tau.g);
        } catch (const Error&) {
          xs = xm;
          gs = gm;
          break;
        }
        const bool flipped = fold ? (tm.g > 0) != (tau.g > 0) : tm.det_sign != tau.det_sign;
        if (flipped) hi = mid;
        else lo = mid;
        xs = std::move(xm);
        gs = gm;
      }
      br.specials.push_back({fold ? unsigned(TagFold) : unsigned(TagBP), br.points.size(), gs, xs});
    }

    x = std::move(xn);
    g = gn;
    tau = std::move(tn);
    const bool out = g < opt.growth_min || g > opt.growth_max;
    if (out || step + 1 == opt.steps) tags |= TagEnd;
    br.points.push_back(make_point(x, g, prob, opt, tags));
    if (out) {
      br.stop_reason = "parameter bound";
      break;
    }
    if (iters <= 3) ds = std::min(ds * 1.3, ds_max);
    else if (iters > 6) ds = std::max(ds * 0.5, opt.ds_min);
  }
  if (br.stop_reason.empty()) br.stop_reason = "step budget";
  br.points.back().tags |= TagEnd;
  br.tangent = tau.x;
  br.tangent.push_back(tau.g);
  return br;
}

SwitchResult branch_switch(const SpecialPoint& bp, const SteadyProblem& prob, double amplitude) {
  if (!(bp.kind & TagBP)) fail(ErrorCode::InvalidArgument, "branch switching needs a branch point");
  const int n = prob.unknowns();
  const double xi = 1.0 / n;
  num::BandedMatrix a = jacobian_banded(bp.x, bp.growth, prob);
  num::BandedMatrix shifted = a;
  const double eps = 1e-9;
  for (int i = 0; i < n; ++i) shifted(i, i) -= eps;
  const num::BandedLU lu(shifted);
  if (lu.singular()) fail(ErrorCode::KernelNotFound, "shifted Jacobian is singular");

  std::vector<double> phi(n);
  std::mt19937 rng(11);
  std::normal_distribution<double> nd;
  for (double& v : phi) v = nd(rng);
  auto normalize = [&](std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) s += v * v;
    s = std::sqrt(xi * s);
    for (double& v : w) v /= s;
  };
  normalize(phi);
  for (int it = 0; it < 6; ++it) {
    lu.solve(std::span<double>(phi));
    normalize(phi);
  }
  std::vector<double> aphi(n);
  a.multiply(phi, aphi);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
  if (max_norm(aphi) > 1e-3 * scale * max_norm(phi)) fail(ErrorCode::KernelNotFound, "no approximate kernel vector");

  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = bp.x[i] + amplitude * phi[i];
  double g = bp.growth;
  Arclength arc{prob, xi, 1e-10};
  if (arc.correct(x, g, phi, 0.0, 25) < 0) fail(ErrorCode::NoConvergence, "corrector failed after branch switching");
  if (prey_deviation(x) < 1e-6) fail(ErrorCode::FellBackToParent, "correction returned to the homogeneous branch");
  SwitchResult res;
  res.x = x;
  res.growth = g;
  res.direction.resize(n + 1);
  for (int i = 0; i < n; ++i) res.direction[i] = x[i] - bp.x[i];
  res.direction[n] = g - bp.growth;
  return res;
}

std::vector<double> localized_seed(const SteadyProblem& prob, double growth, double amplitude) {
  const Params p = prob.p.with_growth(growth);
  const auto e = upper_coexisting(p);
  if (!e) fail(ErrorCode::InvalidArgument, "no interior state for the seed");
  const double K = spatial_spectrum(*e, p, prob.diffusion).K;
  const double width = 2.0 * std::numbers::pi / std::sqrt(std::abs(K));
  std::vector<double> x(prob.unknowns());
  const double c = 0.5 * prob.grid.length;
  for (int i = 0; i < prob.grid.points; ++i) {
    const double s = 1.0 / std::cosh((prob.grid.x(i) - c) / width);
    x[2 * i] = e->u + amplitude * s;
    x[2 * i + 1] = e->v + amplitude * (e->v / e->u) * s;
  }
  return x;
}

double prey_deviation(const std::vector<double>& x) {
  double mean = 0.0;
  const std::size_t n = x.size() / 2;
  for (std::size_t i = 0; i < n; ++i) mean += x[2 * i];
  mean /= n;
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[2 * i] - mean));
  return m;
}

int mode_number(const std::vector<double>& x, const SteadyProblem& prob) {
  std::vector<double> u(prob.grid.points);
  for (int i = 0; i < prob.grid.points; ++i) u[i] = x[2 * i];
  const double mean = spatial_mean(u, prob.grid.dx());
  int changes = 0;
  int prev = 0;
  for (double v : u) {
    const int s = v > mean ? 1 : (v < mean ? -1 : 0);
    if (s != 0) {
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
  }
  return changes;
}

}  // namespace allee
