#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "allee/equilibria.hpp"
#include "allee/params.hpp"

namespace allee {

// Travelling-wave coordinates (X, Y, W, Z): X ~ u, W ~ v, Y and Z the auxiliary variables.
using WaveState = std::array<double, 4>;
using WaveMatrix = std::array<std::array<double, 4>, 4>;

WaveState tw_rhs(const WaveState& s, const Params& p, double diffusion, double speed);
WaveMatrix tw_jacobian(const WaveState& s, const Params& p, double diffusion, double speed);

struct WaveEnds {
  double u1 = 0.0;
  Equilibrium interior;
  double j1 = 0.0, j2 = 0.0, j3 = 0.0;
  WaveState upstream() const { return {u1, u1, 0.0, 0.0}; }
  WaveState downstream() const { return {interior.u, interior.u, interior.v, interior.v}; }
};

WaveEnds wave_ends(const Params& p, double diffusion);

// 2 d sqrt(j3): below it the predator-free state is a spiral in the (W, Z) plane.
double c_min(const Params& p, double diffusion);

struct EndSpectra {
  std::array<std::complex<double>, 4> upstream_closed{};   // closed form, (X,Y) pair then (W,Z) pair
  std::array<std::complex<double>, 4> upstream_numeric{};  // generic 4x4 eigen-solve, sorted like the closed form
  std::array<std::complex<double>, 4> downstream{};
  int downstream_stable = 0;
  bool upstream_spiral = false;     // complex (W,Z) pair
  bool downstream_complex = false;  // complex stable pair at the interior state
};

EndSpectra end_state_spectra(const Params& p, double diffusion, double speed);

// Slope m of the invariant line Z = m W of the linear (W, Z) system.
double wedge_slope(double diffusion, double speed);

struct ShootOptions {
  double launch = 1e-5;    // W at the left end, relative to u1
  double horizon = 600.0;  // truncated time interval
  int nodes = 12001;
  double tol = 1e-9;
  int max_iter = 40;
  double settle_time = 10.0;   // trailing time that must stay within settle_radius of the interior state
  double settle_radius = 1e-4;
  double oscillation_tol = 1e-4;
};

struct HeteroclinicOrbit {
  bool converged = false;
  bool found = false;
  bool monotone = false;
  bool wedge_ok = false;
  double oscillation = 0.0;  // largest reversal of X or W
  double growth = 0.0, speed = 0.0;
  std::vector<double> t;
  std::vector<WaveState> states;
};

// Connection from the predator-free state to the interior state as a projected boundary-value
// problem. `guess`, if given, seeds Newton (rescaled to the new end states).
HeteroclinicOrbit shoot_heteroclinic(const Params& p, double diffusion, double speed, const ShootOptions& opt = {},
                                     const HeteroclinicOrbit* guess = nullptr);

enum class WaveClass { NoWave, Monotonic, NonMonotonic, Unknown };
std::string_view to_string(WaveClass c) noexcept;
int class_code(WaveClass c) noexcept;

struct WaveScanCell {
  double growth = 0.0;
  double speed = 0.0;
  WaveClass cls = WaveClass::Unknown;
  double c_min = 0.0;
  bool interior_complex = false;  // eigen-type cross-check: complex stable pair implies non-monotone
  double orbit_oscillation = 0.0;  // largest reversal seen on the computed orbit
};

struct ScanOptions {
  ShootOptions shoot;
  double reference_growth = 2.7;
  double reference_speed = 5.9;
  int jobs = 1;
};

// Cells ordered by growth (outer) then speed (inner), as given. A found orbit is non-monotone when it
// visibly oscillates or when the interior state has a complex stable pair.
std::vector<WaveScanCell> scan_plane(const Params& p, double diffusion, const std::vector<double>& growths,
                                     const std::vector<double>& speeds, const ScanOptions& opt = {});

// Largest growth in the scan at which the classification switches between the two wave types
// along a column, averaged over columns; empty when no switch is seen.
std::optional<double> monotonicity_boundary(const std::vector<WaveScanCell>& cells);

}  // namespace allee
