#pragma once

#include "allee/equilibria.hpp"
#include "allee/params.hpp"

namespace allee {

double sigma_sn(const Params& p);
double sigma_tc(const Params& p);
// Growth rate above which the given interior state is stable to all modes.
double sigma_s(const Equilibrium& e, const Params& p);

struct HopfPoint {
  double growth = 0.0;
  Equilibrium state;
  double det = 0.0;           // determinant at the Hopf point, must be > 0
  double trace_slope = 0.0;   // d trace / d growth, must be nonzero
};

// trace of J at the upper interior state as a function of growth; throws NoRoot when
// no interior state exists.
double interior_trace(const Params& p, double growth);

// Root of interior_trace on [lo, hi] (tolerance 1e-8) with the transversality checks.
HopfPoint hopf_point(const Params& p, double lo, double hi);

// Lyapunov number from the unreduced planar Taylor expansion at a Hopf point.
// Negative means supercritical. Derivatives by central differences with step h.
double first_lyapunov_coefficient(const Params& p, const HopfPoint& h, double step = 1e-4);

// Independent route: coefficient of the normal form after transforming the linear part to
// real Jordan form. Same sign as first_lyapunov_coefficient.
double normal_form_coefficient(const Params& p, const HopfPoint& h, double step = 1e-4);

}  // namespace allee
