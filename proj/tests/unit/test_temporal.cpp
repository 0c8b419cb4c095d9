#include <doctest.h>

#include <cmath>

#include "allee/equilibria.hpp"
#include "allee/errors.hpp"
#include "allee/temporal.hpp"

using namespace allee;
using doctest::Approx;

TEST_SUITE("temporal-dynamics") {
  TEST_CASE("orbit above the hopf point settles on the interior state") {
    const Params p = Params{}.with_growth(2.7);
    const auto tr = integrate_ode({0.5, 0.3}, p, 2000.0);
    const auto s = attractor_summary(tr, 1500.0);
    CHECK(s.kind == AttractorKind::FixedPoint);
    const auto e = *upper_coexisting(p);
    CHECK(tr.states.back()[0] == Approx(e.u).epsilon(1e-5));
    CHECK(tr.states.back()[1] == Approx(e.v).epsilon(1e-5));
  }

  TEST_CASE("states stay non-negative") {
    const Params p = Params{}.with_growth(1.8);
    const auto tr = integrate_ode({0.6, 0.25}, p, 3000.0);
    for (const auto& s : tr.states) {
      CHECK(s[0] >= -1e-8);
      CHECK(s[1] >= -1e-8);
    }
  }

  TEST_CASE("limit cycle between the heteroclinic and hopf thresholds") {
    const Params p = Params{}.with_growth(1.83);
    const auto tr = integrate_ode({0.6, 0.26}, p, 4000.0);
    const auto s = attractor_summary(tr, 3000.0);
    CHECK(s.kind == AttractorKind::LimitCycle);
    CHECK(s.period > 0.0);
    CHECK(s.u_min < 0.59);
    CHECK(s.u_max > 0.59);
  }

  TEST_CASE("extinction below the saddle-node threshold") {
    const Params p = Params{}.with_growth(0.35);
    OdeOptions opt;
    opt.stop_on_extinction = true;
    const auto tr = integrate_ode({0.5, 0.1}, p, 5000.0, opt);
    CHECK(attractor_summary(tr, 0.0).kind == AttractorKind::Extinction);
  }

  TEST_CASE("halving the tolerance barely moves a settled state") {
    const Params p = Params{}.with_growth(2.2);
    OdeOptions a, b;
    a.tol = 1e-8;
    b.tol = 5e-9;
    const auto ta = integrate_ode({0.5, 0.3}, p, 500.0, a);
    const auto tb = integrate_ode({0.5, 0.3}, p, 500.0, b);
    CHECK(std::abs(ta.states.back()[0] - tb.states.back()[0]) < 1e-7);
    CHECK(std::abs(ta.states.back()[1] - tb.states.back()[1]) < 1e-7);
  }

  TEST_CASE("survival predicate brackets the heteroclinic threshold") {
    const Params p;
    CHECK(survives(p, 1.82));
    CHECK_FALSE(survives(p, 1.75));
  }

  TEST_CASE("invalid tolerance is rejected") {
    OdeOptions opt;
    opt.tol = 1e-2;
    CHECK_THROWS_AS(integrate_ode({0.5, 0.3}, Params{}, 10.0, opt), Error);
  }

  TEST_CASE("diagram rows carry equilibria and cycle envelopes") {
    const auto rows = bifurcation_diagram(Params{}, {0.3, 1.0, 1.83, 2.5});
    bool trivial = false, cycle = false, stable_interior = false;
    for (const auto& r : rows) {
      if (r.branch_id == 0) trivial = true;
      if (r.growth == 1.83 && std::isfinite(r.cycle_umin)) cycle = true;
      if (r.growth == 2.5 && r.branch_id >= 3 && r.stability == Stability::StableFocus) stable_interior = true;
      if (r.growth == 2.5) CHECK(std::isnan(r.cycle_umin));
    }
    CHECK(trivial);
    CHECK(cycle);
    CHECK(stable_interior);
  }
}
