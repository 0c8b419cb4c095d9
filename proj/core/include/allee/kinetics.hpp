#pragma once

#include "allee/params.hpp"

namespace allee {

struct Rates {
  double prey = 0.0;
  double predator = 0.0;
};

struct Mat2 {
  double a = 0.0, b = 0.0;
  double c = 0.0, d = 0.0;

  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }
};

// Reaction terms. At the origin with zero saturation the interaction term is taken as 0.
Rates kinetics(double u, double v, const Params& p);

// Analytic Jacobian of kinetics with respect to (u, v).
Mat2 jacobian(double u, double v, const Params& p);

// Central finite-difference Jacobian, used as a reference.
Mat2 jacobian_fd(double u, double v, const Params& p, double h = 1e-6);

// Unchecked versions for inner loops.
inline Rates kinetics_raw(double u, double v, const Params& p) {
  const double den = p.saturation + u + p.interference * v;
  const double inter = den != 0.0 ? u * v / den : 0.0;
  return {p.growth * u * u * (1.0 - u) - p.mortality * u - inter,
          p.conversion * inter - v};
}

inline Mat2 jacobian_raw(double u, double v, const Params& p) {
  const double den = p.saturation + u + p.interference * v;
  if (den == 0.0) return {-p.mortality, 0.0, 0.0, -1.0};
  const double den2 = den * den;
  const double du = v * (p.saturation + p.interference * v) / den2;  // d(uv/den)/du
  const double dv = u * (p.saturation + u) / den2;                     // d(uv/den)/dv
  return {p.growth * u * (2.0 - 3.0 * u) - p.mortality - du, -dv,
          p.conversion * du, p.conversion * dv - 1.0};
}

}  // namespace allee
