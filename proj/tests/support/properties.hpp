#pragma once

#include <string>

namespace allee::testing {

struct PropertyResult {
  bool ok = false;
  std::string detail;
};

// Analytic Jacobians (kinetics, travelling-wave system, banded steady-state operator)
// against central differences at seeded random states.
PropertyResult jacobian_agreement();
// Every equilibrium of seeded random parameter sets satisfies the kinetics to 1e-10.
PropertyResult equilibrium_residuals();
// Pure diffusion conserves the trapezoidal mass.
PropertyResult diffusion_mass_conservation();
// Cosine modes under pure diffusion decay at k^2 and d k^2 within 1%.
PropertyResult cosine_mode_decay();
// Steady states along continuation branches respect u < u1 and v < M*.
PropertyResult continuation_bounds();
// Continuing forward then backward over the same arclength returns to the start.
PropertyResult branch_reversibility();
// Spatial eigenvalues come in quadruples closed under negation and conjugation.
PropertyResult quadrantal_symmetry();
// Identical seeds give bitwise identical simulations.
PropertyResult seeded_determinism();

}  // namespace allee::testing
