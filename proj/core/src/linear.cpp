#include "allee/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "allee/errors.hpp"
#include "allee/kinetics.hpp"
#include "allee/numerics/roots.hpp"

namespace allee {

std::vector<ModeReport> mode_reports(const Equilibrium& e, const Params& p, double diffusion, double length,
                                     int j_max) {
  if (j_max < 1) fail(ErrorCode::InvalidArgument, "j_max must be >= 1");
  const Mat2 J = jacobian_raw(e.u, e.v, p);
  std::vector<ModeReport> out;
  out.reserve(j_max + 1);
  for (int j = 0; j <= j_max; ++j) {
    const double q = j * std::numbers::pi / length;
    const double k = q * q;
    ModeReport r{j, k};
    r.trace = J.a + J.d - (1.0 + diffusion) * k;
    r.det = diffusion * k * k - (diffusion * J.a + J.d) * k + J.det();
    r.unstable = r.trace > 0.0 || r.det < 0.0;
    out.push_back(r);
  }
  return out;
}

SpatialCoefficients spatial_coefficients(const Equilibrium& e, const Params& p, double diffusion) {
  const Mat2 J = jacobian_raw(e.u, e.v, p);
  SpatialCoefficients c;
  c.s = diffusion * J.a + J.d;
  c.D = J.det();
  c.margin = 4.0 * diffusion * c.D - c.s * c.s;
  return c;
}

int default_mode_count(const Equilibrium& e, const Params& p, double diffusion, double length) {
  const auto c = spatial_coefficients(e, p, diffusion);
  double kmax = 0.0;
  if (c.s > 0.0 && c.margin < 0.0) kmax = (c.s + std::sqrt(-c.margin)) / (2.0 * diffusion);
  const Mat2 J = jacobian_raw(e.u, e.v, p);
  kmax = std::max(kmax, J.trace() / (1.0 + diffusion));
  return static_cast<int>(std::ceil(length * std::sqrt(std::max(kmax, 0.0)) / std::numbers::pi)) + 5;
}

std::string_view to_string(SpatialRegime r) noexcept {
  switch (r) {
    case SpatialRegime::TuringSide: return "turing";
    case SpatialRegime::BDSide: return "bd";
    case SpatialRegime::Generic: return "generic";
  }
  return "?";
}

SpatialSpectrum spatial_spectrum(const Equilibrium& e, const Params& p, double diffusion) {
  if (e.kind != EquilibriumKind::Coexisting) fail(ErrorCode::InvalidArgument, "spatial spectrum needs an interior state");
  const auto c = spatial_coefficients(e, p, diffusion);
  using C = std::complex<double>;
  const C root = std::sqrt(C(-c.margin, 0.0));  // sqrt(s^2 - 4dD)
  const C m1 = (-c.s + root) / (2.0 * diffusion);
  const C m2 = (-c.s - root) / (2.0 * diffusion);
  const C l1 = std::sqrt(m1), l2 = std::sqrt(m2);
  SpatialSpectrum sp;
  sp.lambdas = {l1, -l1, l2, -l2};
  sp.K = -c.s / (2.0 * diffusion);
  const double scale = std::max(c.s * c.s, std::abs(4.0 * diffusion * c.D));
  if (c.margin > 1e-12 * scale) sp.regime = SpatialRegime::Generic;
  else sp.regime = sp.K < 0.0 ? SpatialRegime::TuringSide : SpatialRegime::BDSide;
  return sp;
}

namespace {

SpatialCoefficients coefficients_at(const Params& p, double diffusion, double growth) {
  const Params q = p.with_growth(growth);
  const auto e = upper_coexisting(q);
  if (!e) fail(ErrorCode::NoRoot, "no interior state at growth " + std::to_string(growth));
  return spatial_coefficients(*e, q, diffusion);
}

}  // namespace

std::vector<SpatialThreshold> turing_bd_thresholds(const Params& p, double diffusion, double lo, double hi,
                                                   int samples) {
  auto G = [&](double g) { return coefficients_at(p, diffusion, g).margin; };
  const auto roots = num::find_roots(G, lo, hi, samples, 1e-12);
  if (roots.empty()) fail(ErrorCode::NoRoot, "threshold function keeps its sign on the bracket");
  std::vector<SpatialThreshold> out;
  for (double g : roots) {
    const auto c = coefficients_at(p, diffusion, g);
    SpatialThreshold t;
    t.growth = g;
    t.K = -c.s / (2.0 * diffusion);
    t.regime = t.K < 0.0 ? SpatialRegime::TuringSide : SpatialRegime::BDSide;
    t.k_minus = t.k_plus = c.s / (2.0 * diffusion);
    out.push_back(t);
  }
  return out;
}

std::vector<double> branch_point_sigmas(const Params& p, double diffusion, double length, int n, double lo,
                                        double hi, int samples) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "mode index must be >= 1");
  const double q = n * std::numbers::pi / length;
  const double k = q * q;
  auto det = [&](double g) {
    const auto c = coefficients_at(p, diffusion, g);
    return diffusion * k * k - c.s * k + c.D;
  };
  auto roots = num::find_roots(det, lo, hi, samples, 1e-12);
  if (roots.empty()) fail(ErrorCode::NoRoot, "mode determinant keeps its sign on the bracket");
  return roots;
}

NonexistenceBound nonexistence_dstar(const Params& p, double length) {
  p.validate();
  if (!(p.saturation > 0.0) || !(p.interference > 0.0))
    fail(ErrorCode::NotApplicable, "bound needs positive saturation and interference");
  if (!(p.growth > 4.0 * p.mortality) || !(p.conversion > 1.0))
    fail(ErrorCode::NotApplicable, "bound needs growth > 4 mortality and conversion > 1");
  const AxialRoots ax = axial_roots(p);
  NonexistenceBound b;
  b.u_upper = ax.upper;
  b.u_lower = ax.lower;
  const double g = p.conversion;
  b.A = g / (2.0 * p.interference) + ax.upper / (2.0 * p.saturation) + ax.upper * (2.0 - ax.lower);
  b.B = g / (2.0 * p.interference) + (g - 1.0) + ax.upper / (2.0 * p.saturation);
  const double q = std::numbers::pi / length;
  b.k1 = q * q;
  b.d_star = std::max(b.A, b.B) / b.k1;
  return b;
}

BandEdges kpm_roots(const Equilibrium& e, const Params& p, double diffusion) {
  const Mat2 J = jacobian_raw(e.u, e.v, p);
  const auto c = spatial_coefficients(e, p, diffusion);
  if (!(J.a > 0.0) || !(c.D > 0.0) || !(c.s > 2.0 * std::sqrt(diffusion * c.D)))
    fail(ErrorCode::HypothesisFailed, "need a10 > 0 and d a10 + b01 > 2 sqrt(d D) > 0");
  const double r = std::sqrt(c.s * c.s - 4.0 * diffusion * c.D);
  // stable product form for the smaller root
  const double kp = (c.s + r) / (2.0 * diffusion);
  return {c.D / (diffusion * kp), kp};
}

SteadyBounds vbounds(const Params& p) {
  p.validate();
  if (p.growth < 4.0 * p.mortality) fail(ErrorCode::OutOfRange, "bounds need growth >= 4 mortality");
  const AxialRoots ax = axial_roots(p);
  SteadyBounds b;
  b.u_bound = ax.upper;
  b.v_bound = p.conversion * ax.upper * (p.growth / 4.0 - p.mortality);
  b.degenerate = b.v_bound <= 0.0;
  return b;
}

}  // namespace allee
