#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "allee/equilibria.hpp"
#include "allee/params.hpp"

namespace allee {

using Point2 = std::array<double, 2>;

enum class Terminal { ReachedT, ConvergedToPoint, Diverged };

struct Trajectory {
  std::vector<double> times;
  std::vector<Point2> states;
  Terminal terminal = Terminal::ReachedT;
};

struct OdeOptions {
  double tol = 1e-8;         // relative tolerance, in [1e-12, 1e-3]
  double sample_dt = 0.1;
  bool stop_on_extinction = false;
  double extinction_level = 1e-6;
};

Trajectory integrate_ode(Point2 ic, const Params& p, double duration, const OdeOptions& opt = {});

enum class AttractorKind { FixedPoint, LimitCycle, Extinction };

struct AttractorSummary {
  AttractorKind kind = AttractorKind::FixedPoint;
  double period = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
};

// Classifies the part of the trajectory after `transient`. Throws Inconclusive when the
// oscillation is neither settled nor clearly periodic.
AttractorSummary attractor_summary(const Trajectory& tr, double transient);

struct HeteroclinicOptions {
  double horizon = 5e4;          // integration ceiling per predicate evaluation
  Point2 offset{0.01, 0.01};     // seed relative to the interior state
  double width = 1e-4;           // bisection stops below this bracket width
  double extinction_level = 1e-6;
  double tol = 1e-8;
};

// True when the seeded orbit survives (does not collapse to the origin) within the horizon.
bool survives(const Params& p, double growth, const HeteroclinicOptions& opt = {});

// Growth rate at which the cycle born at the Hopf point disappears.
double heteroclinic_threshold(const Params& p, double lo, double hi, const HeteroclinicOptions& opt = {});

struct DiagramRow {
  double growth = 0.0;
  int branch_id = 0;  // 0 trivial, 1 and 2 axial, 3+ interior states by increasing u
  double u = 0.0;
  Stability stability = Stability::StableNode;
  double cycle_umin = NAN;
  double cycle_umax = NAN;
};

struct DiagramOptions {
  double cycle_horizon = 4000.0;
  double cycle_transient = 3000.0;
  int jobs = 1;
};

std::vector<DiagramRow> bifurcation_diagram(const Params& p, const std::vector<double>& growths,
                                            const DiagramOptions& opt = {});

}  // namespace allee
