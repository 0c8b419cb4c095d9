#pragma once

namespace allee {

// Non-dimensional kinetic parameters.
//   saturation   - self-saturation of predation (alpha); 0 gives the ratio-dependent response
//   interference - predator interference (beta); 0 gives Holling type II
//   conversion   - conversion efficiency (gamma)
//   growth       - prey growth rate (sigma)
//   mortality    - prey mortality (eta)
struct Params {
  double saturation = 0.07;
  double interference = 0.2;
  double conversion = 1.2;
  double growth = 2.7;
  double mortality = 0.1;

  // Throws InvalidArgument when a field is non-finite or out of range.
  void validate() const;

  Params with_growth(double g) const {
    Params q = *this;
    q.growth = g;
    return q;
  }
};

// Domain-level parameters of the reaction-diffusion problem.
struct Spatial {
  double diffusion = 46.0;  // predator/prey diffusion ratio
  double length = 200.0;

  void validate() const;
};

}  // namespace allee
