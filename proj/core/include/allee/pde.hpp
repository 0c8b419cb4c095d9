#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "allee/equilibria.hpp"
#include "allee/numerics/tridiag.hpp"
#include "allee/params.hpp"

namespace allee {

// Vertex-centred grid on [0, length] with `points` nodes, including both ends.
struct Grid {
  double length = 200.0;
  int points = 512;

  double dx() const { return length / (points - 1); }
  double x(int i) const { return i * dx(); }
  void validate() const;
};

struct Field {
  Grid grid;
  std::vector<double> u, v;
  double t = 0.0;
};

Field constant_field(const Grid& grid, double u, double v);
// Interior state plus independent uniform noise in [-amplitude, amplitude] on both species.
Field perturbed_homogeneous(const Grid& grid, const Params& p, double amplitude, std::uint64_t seed);
// Interior state left of x_step, predator-free state u1 to the right.
Field invasion_step(const Grid& grid, const Params& p, double x_step);
// Interior state plus Gaussian noise of the given standard deviation on |x - center| <= half_width, zero elsewhere.
Field center_pulse(const Grid& grid, const Params& p, double center, double half_width, double noise,
                   std::uint64_t seed);

// Trapezoid-rule integrals on the grid.
double integral(const std::vector<double>& w, double dx);
double spatial_mean(const std::vector<double>& w, double dx);
double spatial_variance(const std::vector<double>& w, double dx);
double l2_norm(const std::vector<double>& w, double dx);

enum class Scheme { ImexEuler, Strang };

// Time stepper for u_t = u_xx + F1, v_t = d v_xx + F2 with no-flux ends.
class Simulator {
 public:
  Simulator(Grid grid, Params p, double diffusion, double dt, Scheme scheme = Scheme::Strang,
            bool with_reaction = true);

  double dt() const { return dt_; }
  const Grid& grid() const { return grid_; }
  const Params& params() const { return p_; }
  double diffusion() const { return d_; }

  // One step; returns the sup norm of the discrete time derivative over the step.
  double advance(Field& f) const;
  // Steps the state and a tangent vector (du, dv) together along the linearised step.
  void advance_tangent(Field& f, std::vector<double>& du, std::vector<double>& dv) const;

 private:
  struct Diffusion {
    num::Tridiagonal stage1, stage2, euler;
    double coef = 0.0;
  };
  Diffusion make_diffusion(double coefficient) const;
  void apply_laplacian(const std::vector<double>& w, double coefficient, std::vector<double>& out) const;
  void diffuse(std::vector<double>& w, const Diffusion& op) const;
  void react(Field& f, double h) const;
  void react_tangent(Field& f, double h, std::vector<double>& du, std::vector<double>& dv) const;

  Grid grid_;
  Params p_;
  double d_;
  double dt_;
  Scheme scheme_;
  bool reaction_;
  Diffusion prey_, predator_;
};

// Single first-order IMEX step: implicit diffusion, explicit reaction.
Field step(const Field& f, const Params& p, double diffusion, double dt);

// 0.05 time units; implicit diffusion removes the grid restriction.
double default_dt();
// Four points per Turing wavelength (from the band edge), at least 512 for length >= 200.
int default_points(const Params& p, double diffusion, double length);

struct SpaceTimeRecord {
  std::vector<double> t, u_av, v_av, var_u, rate;  // rate: sup |d/dt| over the last step
  double min_value = 0.0;                            // smallest density seen
};

struct RunOptions {
  double duration = 100.0;
  double summary_every = 1.0;
  double snapshot_every = 0.0;  // 0 disables snapshots
  std::function<void(const Field&)> on_snapshot;
  std::function<void(const Field&)> on_summary;
};

SpaceTimeRecord run(Field& f, const Simulator& sim, const RunOptions& opt);

enum class Species { Prey, Predator };

// Leading-edge crossing of `level`, scanning from the right end towards the left.
double front_position(const Field& f, double level, Species s = Species::Predator);

// Least-squares slope of positions against times for t in [t_from, t_to].
double measure_front_speed(const std::vector<double>& times, const std::vector<double>& positions, double t_from,
                           double t_to);

enum class Asymptotic { Homogeneous, StationaryPattern, Oscillatory, Irregular };
std::string_view to_string(Asymptotic a) noexcept;

// Classifies the record over its last `window` time units.
Asymptotic classify_asymptotic(const SpaceTimeRecord& rec, double window);

// Fraction of the domain where |u - reference| reaches half its maximum.
double half_max_support(const Field& f, double reference);

}  // namespace allee
