#include "allee/thresholds.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "allee/errors.hpp"
#include "allee/numerics/roots.hpp"

namespace allee {

double sigma_sn(const Params& p) {
  p.validate();
  return 4.0 * p.mortality;
}

double sigma_tc(const Params& p) {
  p.validate();
  const double a = p.saturation, g = p.conversion;
  if (!(a > 0.0) || !(g > a + 1.0))
    fail(ErrorCode::OutOfRange, "transcritical threshold needs saturation > 0 and conversion > saturation + 1");
  return p.mortality * (g - 1.0) * (g - 1.0) / (a * (g - a - 1.0));
}

double sigma_s(const Equilibrium& e, const Params& p) {
  if (e.kind != EquilibriumKind::Coexisting) fail(ErrorCode::InvalidArgument, "sigma_s needs an interior state");
  if (e.u <= 0.5) fail(ErrorCode::OutOfRange, "stability bound only stated for prey density > 1/2");
  const double g = p.conversion;
  return e.v / (g * g * e.u * e.u * e.u * (2.0 * e.u - 1.0));
}

double interior_trace(const Params& p, double growth) {
  const auto e = upper_coexisting(p.with_growth(growth));
  if (!e) fail(ErrorCode::NoRoot, "no interior state at growth " + std::to_string(growth));
  return e->trace;
}

HopfPoint hopf_point(const Params& p, double lo, double hi) {
  auto tr = [&](double g) { return interior_trace(p, g); };
  double flo, fhi;
  try {
    flo = tr(lo);
    fhi = tr(hi);
  } catch (const Error& err) {
    fail(ErrorCode::NoSignChange, std::string("bracket endpoint invalid: ") + err.what());
  }
  if ((flo > 0) == (fhi > 0)) fail(ErrorCode::NoSignChange, "trace keeps its sign on the bracket");
  const double g = num::find_root(tr, lo, hi, 1e-12);
  HopfPoint h;
  h.growth = g;
  h.state = *upper_coexisting(p.with_growth(g));
  h.det = h.state.det;
  const double dg = 1e-6;
  h.trace_slope = (tr(g + dg) - tr(g - dg)) / (2.0 * dg);
  if (!(h.det > 0.0)) fail(ErrorCode::C1Violated, "determinant not positive at the Hopf point");
  if (std::abs(h.trace_slope) < 1e-8) fail(ErrorCode::NoSignChange, "trace crosses zero without transversality");
  return h;
}

namespace {

using Field2 = std::function<std::array<double, 2>(double, double)>;

// Second and third partial derivatives of a planar map at the origin.
struct Taylor {
  // index [component][derivative]: xx, xy, yy, xxx, xxy, xyy, yyy
  std::array<std::array<double, 7>, 2> d{};
};

Taylor taylor(const Field2& f, double h) {
  auto at = [&](int i, int j) { return f(i * h, j * h); };
  Taylor t;
  const auto f00 = at(0, 0);
  const auto fp0 = at(1, 0), fm0 = at(-1, 0), f0p = at(0, 1), f0m = at(0, -1);
  const auto fpp = at(1, 1), fpm = at(1, -1), fmp = at(-1, 1), fmm = at(-1, -1);
  const auto f20 = at(2, 0), fm20 = at(-2, 0), f02 = at(0, 2), f0m2 = at(0, -2);
  const double h2 = h * h, h3 = h2 * h;
  for (int k = 0; k < 2; ++k) {
    t.d[k][0] = (fp0[k] - 2 * f00[k] + fm0[k]) / h2;
    t.d[k][1] = (fpp[k] - fpm[k] - fmp[k] + fmm[k]) / (4 * h2);
    t.d[k][2] = (f0p[k] - 2 * f00[k] + f0m[k]) / h2;
    t.d[k][3] = (f20[k] - 2 * fp0[k] + 2 * fm0[k] - fm20[k]) / (2 * h3);
    t.d[k][4] = (fpp[k] - 2 * f0p[k] + fmp[k] - fpm[k] + 2 * f0m[k] - fmm[k]) / (2 * h3);
    t.d[k][5] = (fpp[k] - 2 * fp0[k] + fpm[k] - fmp[k] + 2 * fm0[k] - fmm[k]) / (2 * h3);
    t.d[k][6] = (f02[k] - 2 * f0p[k] + 2 * f0m[k] - f0m2[k]) / (2 * h3);
  }
  return t;
}

void require_hopf(const Params& p, const HopfPoint& hp) {
  const Mat2 j = jacobian_raw(hp.state.u, hp.state.v, p.with_growth(hp.growth));
  if (std::abs(j.trace()) > 1e-6 || !(j.det() > 0.0))
    fail(ErrorCode::NotAtHopf, "linear part does not have a purely imaginary pair");
}

}  // namespace

double first_lyapunov_coefficient(const Params& p0, const HopfPoint& hp, double step) {
  require_hopf(p0, hp);
  const Params p = p0.with_growth(hp.growth);
  const double us = hp.state.u, vs = hp.state.v;
  const Mat2 j = jacobian_raw(us, vs, p);
  const Taylor t = taylor(
      [&](double x, double y) {
        const Rates r = kinetics_raw(us + x, vs + y, p);
        return std::array<double, 2>{r.prey, r.predator};
      },
      step);
  // Taylor coefficients: coefficient of x^i y^j is the derivative over i! j!
  auto coef = [&](int k) {
    const auto& d = t.d[k];
    return std::array<double, 7>{d[0] / 2, d[1], d[2] / 2, d[3] / 6, d[4] / 2, d[5] / 2, d[6] / 6};
  };
  const auto P = coef(0), Q = coef(1);
  const double a20 = P[0], a11 = P[1], a02 = P[2], a30 = P[3], a21 = P[4], a12 = P[5], a03 = P[6];
  const double b20 = Q[0], b11 = Q[1], b02 = Q[2], b30 = Q[3], b21 = Q[4], b12 = Q[5], b03 = Q[6];
  (void)a03;
  (void)b30;
  const double a = j.a, b = j.b, c = j.c;
  const double delta = j.det();

  const double quad = a * c * (a11 * a11 + a11 * b02 + a02 * b11) +
                      a * b * (b11 * b11 + a20 * b11 + a11 * b02) +
                      c * c * (a11 * a02 + 2 * a02 * b02) - 2 * a * c * (b02 * b02 - a20 * a02) -
                      2 * a * b * (a20 * a20 - b20 * b02) - b * b * (2 * a20 * b20 + b11 * b20) +
                      (b * c - 2 * a * a) * (b11 * b02 - a11 * a20);
  const double cubic = (a * a + b * c) * (3 * (c * b03 - b * a30) + 2 * a * (a21 + b12) + (c * a12 - b * b21));
  return -3.0 * std::numbers::pi / (2.0 * b * std::pow(delta, 1.5)) * (quad - cubic);
}

double normal_form_coefficient(const Params& p0, const HopfPoint& hp, double step) {
  require_hopf(p0, hp);
  const Params p = p0.with_growth(hp.growth);
  const double us = hp.state.u, vs = hp.state.v;
  const Mat2 j = jacobian_raw(us, vs, p);
  const double w = std::sqrt(j.det());
  // columns: real and minus imaginary part of the eigenvector (b, i w - a)
  const double p11 = j.b, p12 = 0.0, p21 = -j.a, p22 = -w;
  const double pdet = p11 * p22 - p12 * p21;
  const Taylor t = taylor(
      [&](double x, double y) {
        const Rates r = kinetics_raw(us + p11 * x + p12 * y, vs + p21 * x + p22 * y, p);
        return std::array<double, 2>{(p22 * r.prey - p12 * r.predator) / pdet,
                                     (-p21 * r.prey + p11 * r.predator) / pdet};
      },
      step);
  const auto& f = t.d[0];
  const auto& g = t.d[1];
  const double fxx = f[0], fxy = f[1], fyy = f[2], fxxx = f[3], fxyy = f[5];
  const double gxx = g[0], gxy = g[1], gyy = g[2], gxxy = g[4], gyyy = g[6];
  return (fxxx + fxyy + gxxy + gyyy) / 16.0 +
         (fxy * (fxx + fyy) - gxy * (gxx + gyy) - fxx * gxx + fyy * gyy) / (16.0 * w);
}

}  // namespace allee
