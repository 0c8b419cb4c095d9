#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include "allee/equilibria.hpp"
#include "allee/params.hpp"

namespace allee {

struct ModeReport {
  int j = 0;
  double k = 0.0;  // squared wavenumber (j pi / L)^2
  double trace = 0.0;
  double det = 0.0;
  bool unstable = false;
};

// Trace/determinant of J(E) - k diag(1, d) for Neumann modes j = 0..j_max.
std::vector<ModeReport> mode_reports(const Equilibrium& e, const Params& p, double diffusion, double length,
                                     int j_max);

// Default mode cut-off: covers the unstable band plus five modes.
int default_mode_count(const Equilibrium& e, const Params& p, double diffusion, double length);

// Quantities of the spatial characteristic polynomial d m^2 + s m + D with m = lambda^2.
struct SpatialCoefficients {
  double s = 0.0;      // d*a10 + b01
  double D = 0.0;      // det J
  double margin = 0.0; // 4 d D - s^2; zero at a threshold
};
SpatialCoefficients spatial_coefficients(const Equilibrium& e, const Params& p, double diffusion);

enum class SpatialRegime { TuringSide, BDSide, Generic };
std::string_view to_string(SpatialRegime r) noexcept;

struct SpatialSpectrum {
  std::array<std::complex<double>, 4> lambdas{};
  double K = 0.0;  // repeated-root value of lambda^2 at a threshold: -s/(2d)
  SpatialRegime regime = SpatialRegime::Generic;
};

SpatialSpectrum spatial_spectrum(const Equilibrium& e, const Params& p, double diffusion);

struct SpatialThreshold {
  double growth = 0.0;
  SpatialRegime regime = SpatialRegime::Generic;
  double K = 0.0;
  double k_minus = 0.0;
  double k_plus = 0.0;
};

// Roots in growth of 4dD - s^2 on [lo, hi] at the upper interior state.
std::vector<SpatialThreshold> turing_bd_thresholds(const Params& p, double diffusion, double lo, double hi,
                                                   int samples = 400);

// Growth values where det of the mode-n operator vanishes.
std::vector<double> branch_point_sigmas(const Params& p, double diffusion, double length, int n, double lo,
                                        double hi, int samples = 400);

struct NonexistenceBound {
  double u_upper = 0.0, u_lower = 0.0;
  double A = 0.0, B = 0.0;
  double k1 = 0.0;
  double d_star = 0.0;
};

NonexistenceBound nonexistence_dstar(const Params& p, double length);

struct BandEdges {
  double k_minus = 0.0;
  double k_plus = 0.0;
};

// Band of unstable squared wavenumbers; throws HypothesisFailed outside its hypothesis.
BandEdges kpm_roots(const Equilibrium& e, const Params& p, double diffusion);

struct SteadyBounds {
  double u_bound = 0.0;  // u1
  double v_bound = 0.0;  // M*
  bool degenerate = false;  // growth = 4 mortality, bound collapses to 0
};

SteadyBounds vbounds(const Params& p);

}  // namespace allee
