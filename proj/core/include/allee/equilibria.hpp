#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "allee/kinetics.hpp"
#include "allee/params.hpp"

namespace allee {

enum class EquilibriumKind { Trivial, Axial1, Axial2, Coexisting };

enum class Stability { StableNode, StableFocus, UnstableNode, UnstableFocus, Saddle, NonHyperbolic };

std::string_view to_string(EquilibriumKind k) noexcept;
std::string_view to_string(Stability s) noexcept;
int stability_code(Stability s) noexcept;

struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::Trivial;
  double u = 0.0;
  double v = 0.0;
  double trace = 0.0;
  double det = 0.0;
  Stability stability = Stability::StableNode;
};

// Planar classification from trace and determinant; |det| or |trace| below tol
// (with det > 0) counts as non-hyperbolic.
Stability classify(double trace, double det, double tol = 1e-12);

Equilibrium make_equilibrium(EquilibriumKind kind, double u, double v, const Params& p);

Equilibrium trivial_equilibrium(const Params& p);

// Prey-only roots u1 >= u2 of growth*u*(1-u) = mortality; empty when growth < 4*mortality.
std::vector<Equilibrium> axial_equilibria(const Params& p);

// Both axial roots (u1, u2); throws OutOfRange when growth < 4*mortality.
struct AxialRoots {
  double upper;
  double lower;
};
AxialRoots axial_roots(const Params& p);

// Feasible interior states, sorted by increasing u.
std::vector<Equilibrium> coexisting_equilibria(const Params& p);

// Interior state with the largest prey density, if any.
std::optional<Equilibrium> upper_coexisting(const Params& p);

std::vector<Equilibrium> all_equilibria(const Params& p);

// Coefficients (c3, c2, c1, c0) of the interior cubic in u.
struct Cubic {
  double c3, c2, c1, c0;
  double operator()(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
  double derivative(double x) const { return (3.0 * c3 * x + 2.0 * c2) * x + c1; }
};
Cubic interior_cubic(const Params& p);

// Real roots of a*x^3 + b*x^2 + c*x + d (degree drops when leading coefficients vanish),
// Newton-polished, ascending, duplicates within 1e-9 merged.
std::vector<double> real_cubic_roots(double a, double b, double c, double d);

}  // namespace allee
