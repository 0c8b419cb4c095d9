#include "allee/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "allee/errors.hpp"

namespace allee {

std::string_view to_string(EquilibriumKind k) noexcept {
  switch (k) {
    case EquilibriumKind::Trivial: return "trivial";
    case EquilibriumKind::Axial1: return "axial1";
    case EquilibriumKind::Axial2: return "axial2";
    case EquilibriumKind::Coexisting: return "coexisting";
  }
  return "?";
}

std::string_view to_string(Stability s) noexcept {
  switch (s) {
    case Stability::StableNode: return "stable-node";
    case Stability::StableFocus: return "stable-focus";
    case Stability::UnstableNode: return "unstable-node";
    case Stability::UnstableFocus: return "unstable-focus";
    case Stability::Saddle: return "saddle";
    case Stability::NonHyperbolic: return "non-hyperbolic";
  }
  return "?";
}

int stability_code(Stability s) noexcept { return static_cast<int>(s); }

Stability classify(double trace, double det, double tol) {
  if (det < -tol) return Stability::Saddle;
  if (det <= tol || std::abs(trace) <= tol) return Stability::NonHyperbolic;
  const bool node = trace * trace - 4.0 * det >= 0.0;
  if (trace < 0.0) return node ? Stability::StableNode : Stability::StableFocus;
  return node ? Stability::UnstableNode : Stability::UnstableFocus;
}

Equilibrium make_equilibrium(EquilibriumKind kind, double u, double v, const Params& p) {
  const Mat2 j = jacobian_raw(u, v, p);
  return {kind, u, v, j.trace(), j.det(), classify(j.trace(), j.det())};
}

Equilibrium trivial_equilibrium(const Params& p) {
  p.validate();
  return make_equilibrium(EquilibriumKind::Trivial, 0.0, 0.0, p);
}

namespace {

bool at_fold(const Params& p) {
  return std::abs(p.growth - 4.0 * p.mortality) <= 1e-14 * p.growth;
}

}  // namespace

AxialRoots axial_roots(const Params& p) {
  p.validate();
  if (at_fold(p)) return {0.5, 0.5};
  const double s = p.growth;
  const double disc = s * s - 4.0 * s * p.mortality;
  if (disc < 0.0) fail(ErrorCode::OutOfRange, "no prey-only equilibrium below the saddle-node");
  const double r = std::sqrt(disc);
  return {(s + r) / (2.0 * s), (s - r) / (2.0 * s)};
}

std::vector<Equilibrium> axial_equilibria(const Params& p) {
  p.validate();
  if (at_fold(p)) return {make_equilibrium(EquilibriumKind::Axial1, 0.5, 0.0, p)};
  if (p.growth < 4.0 * p.mortality) return {};
  const AxialRoots r = axial_roots(p);
  return {make_equilibrium(EquilibriumKind::Axial1, r.upper, 0.0, p),
          make_equilibrium(EquilibriumKind::Axial2, r.lower, 0.0, p)};
}

Cubic interior_cubic(const Params& p) {
  const double k = p.growth * p.conversion * p.interference;
  return {k, -k, p.interference * p.mortality * p.conversion + p.conversion - 1.0, -p.saturation};
}

namespace {

double polish(double a, double b, double c, double d, double x) {
  for (int i = 0; i < 60; ++i) {
    const double f = ((a * x + b) * x + c) * x + d;
    const double df = (3.0 * a * x + 2.0 * b) * x + c;
    if (df == 0.0) break;
    const double step = f / df;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

std::vector<double> quadratic_roots(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  std::vector<double> r;
  if (q != 0.0) r = {q / a, c / q};
  else r = {0.0, 0.0};
  return r;
}

}  // namespace

std::vector<double> real_cubic_roots(double a, double b, double c, double d) {
  const double scale = std::max({std::abs(b), std::abs(c), std::abs(d)});
  std::vector<double> roots;
  if (std::abs(a) <= 1e-14 * scale) {
    roots = quadratic_roots(b, c, d);
  } else {
    // depressed cubic t^3 + P t + Q with x = t - b/(3a)
    const double B = b / a, C = c / a, D = d / a;
    const double shift = B / 3.0;
    const double P = C - B * B / 3.0;
    const double Q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
    const double disc = Q * Q / 4.0 + P * P * P / 27.0;
    if (disc > 0.0) {
      const double s = std::sqrt(disc);
      roots = {std::cbrt(-Q / 2.0 + s) + std::cbrt(-Q / 2.0 - s) - shift};
    } else if (P == 0.0) {
      roots = {-shift};
    } else {
      const double m = 2.0 * std::sqrt(-P / 3.0);
      const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
      const double th = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k)
        roots.push_back(m * std::cos(th - 2.0 * std::numbers::pi * k / 3.0) - shift);
    }
  }
  for (double& x : roots) x = polish(a, b, c, d, x);
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double x : roots)
    if (out.empty() || std::abs(x - out.back()) > 1e-9) out.push_back(x);
  return out;
}

std::vector<Equilibrium> coexisting_equilibria(const Params& p) {
  p.validate();
  const double a = p.saturation, b = p.interference, g = p.conversion;
  if (p.growth < 4.0 * p.mortality && !at_fold(p)) return {};
  const AxialRoots ax = axial_roots(p);

  if (b == 0.0) {
    if (g <= 1.0) fail(ErrorCode::DegenerateKinetics, "Holling limit needs conversion > 1");
    const double u = a / (g - 1.0);
    const double v = (p.growth * u * (1.0 - u) - p.mortality) * (a + u);
    if (!(u > 0.0 && v > 0.0 && u < ax.upper)) return {};
    return {make_equilibrium(EquilibriumKind::Coexisting, u, v, p)};
  }
  if (g <= 1.0) return {};

  const Cubic q = interior_cubic(p);
  const double lower = std::max(a / (g - 1.0), ax.lower);
  std::vector<Equilibrium> out;
  for (double u : real_cubic_roots(q.c3, q.c2, q.c1, q.c0)) {
    if (!(u > lower && u < ax.upper)) continue;
    const double v = (g * u - a - u) / b;
    if (v <= 0.0) continue;
    Equilibrium e = make_equilibrium(EquilibriumKind::Coexisting, u, v, p);
    // a merged double root is the tangency of two interior states
    if (std::abs(q.derivative(u)) < 1e-7) e.stability = Stability::NonHyperbolic;
    out.push_back(e);
  }
  return out;
}

std::optional<Equilibrium> upper_coexisting(const Params& p) {
  auto all = coexisting_equilibria(p);
  if (all.empty()) return std::nullopt;
  return all.back();
}

std::vector<Equilibrium> all_equilibria(const Params& p) {
  std::vector<Equilibrium> out{trivial_equilibrium(p)};
  for (auto& e : axial_equilibria(p)) out.push_back(e);
  for (auto& e : coexisting_equilibria(p)) out.push_back(e);
  return out;
}

}  // namespace allee
