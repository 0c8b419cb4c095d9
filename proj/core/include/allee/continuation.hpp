#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "allee/numerics/banded.hpp"
#include "allee/params.hpp"
#include "allee/pde.hpp"

namespace allee {

// Steady states of u'' + F1 = 0, d v'' + F2 = 0 on a Neumann grid. The unknown vector is
// interleaved (u0, v0, u1, v1, ...), so the Jacobian has two bands on either side.
struct SteadyProblem {
  Grid grid;
  Params p;
  double diffusion = 46.0;

  int unknowns() const { return 2 * grid.points; }
};

std::vector<double> pack(const Field& f);
Field unpack(const std::vector<double>& x, const Grid& grid);

std::vector<double> residual(const std::vector<double>& x, double growth, const SteadyProblem& prob);
num::BandedMatrix jacobian_banded(const std::vector<double>& x, double growth, const SteadyProblem& prob);
std::vector<double> growth_derivative(const std::vector<double>& x, const SteadyProblem& prob);

double max_norm(const std::vector<double>& r);
double prey_l2_norm(const std::vector<double>& x, const SteadyProblem& prob);

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 25;
};

std::vector<double> newton_correct(std::vector<double> x, double growth, const SteadyProblem& prob,
                                   const NewtonOptions& opt = {});

struct StabilityReport {
  int n_unstable = 0;
  std::vector<std::complex<double>> leading;  // converged eigenvalues, decreasing real part
};

StabilityReport solution_stability(const std::vector<double>& x, double growth, const SteadyProblem& prob,
                                   int n_eigs = 30);

enum PointTag : unsigned { TagNone = 0, TagStart = 1, TagEnd = 2, TagFold = 4, TagBP = 8 };
std::string tag_string(unsigned tags);

struct BranchPoint {
  double growth = 0.0;
  std::vector<double> x;
  double l2norm = 0.0;
  int n_unstable = -1;  // -1 when stability was not computed
  unsigned tags = TagNone;
};

struct SpecialPoint {
  unsigned kind = TagNone;      // TagFold or TagBP
  std::size_t after = 0;        // index of the branch point just past the special point
  double growth = 0.0;          // located value
  std::vector<double> x;        // located solution
};

struct Branch {
  std::vector<BranchPoint> points;
  std::string stop_reason;
  std::vector<SpecialPoint> specials;
  std::vector<double> tangent;  // last tangent (x part then growth), weighted-normalised
};

struct ContinuationOptions {
  int steps = 200;
  double ds0 = 0.01;
  double ds_min = 1e-4;
  double ds_max = 0.04;  // defaults to 4 ds0 when left <= 0
  double growth_min = -1e300;
  double growth_max = 1e300;
  int direction = -1;  // initial sign of d growth / ds
  double tol = 1e-10;
  bool stability = true;
  int n_eigs = 30;
  bool locate = true;  // bisect special points in arclength
  std::optional<std::vector<double>> tangent_hint;  // orients the first tangent instead of `direction`
};

Branch continue_branch(const std::vector<double>& x0, double growth0, const SteadyProblem& prob,
                       const ContinuationOptions& opt);

// Moves from a located branch point onto the crossing branch along the approximate kernel.
struct SwitchResult {
  std::vector<double> x;
  double growth = 0.0;
  std::vector<double> direction;  // tangent hint for continue_branch
};

SwitchResult branch_switch(const SpecialPoint& bp, const SteadyProblem& prob, double amplitude);

// Interior state plus a sech bump of width 2 pi / sqrt|K| centred at L/2.
std::vector<double> localized_seed(const SteadyProblem& prob, double growth, double amplitude);

// Number of sign changes of the prey profile about its mean; n for a mode-n cosine.
int mode_number(const std::vector<double>& x, const SteadyProblem& prob);

// Largest |u - mean(u)| of the prey profile.
double prey_deviation(const std::vector<double>& x);

}  // namespace allee
