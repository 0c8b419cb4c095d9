#include <doctest.h>

#include <cmath>
#include <numbers>

#include "allee/equilibria.hpp"
#include "allee/errors.hpp"
#include "allee/kinetics.hpp"
#include "allee/thresholds.hpp"

using namespace allee;
using doctest::Approx;

TEST_SUITE("model-core") {
  TEST_CASE("kinetics vanish at the origin with zero saturation") {
    Params p;
    p.saturation = 0.0;
    const Rates r = kinetics(0.0, 0.0, p);
    CHECK(r.prey == 0.0);
    CHECK(r.predator == 0.0);
    const Rates q = kinetics(0.0, 0.5, p);
    CHECK(q.predator == Approx(-0.5));
  }

  TEST_CASE("parameter validation") {
    Params p;
    p.conversion = 0.0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = Params{};
    p.saturation = -0.1;
    CHECK_THROWS_AS(kinetics(0.5, 0.5, p), Error);
    p = Params{};
    p.growth = std::nan("");
    CHECK_THROWS_AS(p.validate(), Error);
  }

  TEST_CASE("axial states of the reference set") {
    const Params p = Params{}.with_growth(2.7);
    const AxialRoots r = axial_roots(p);
    CHECK(r.upper == Approx(0.961481).epsilon(1e-6));
    CHECK(r.upper + r.lower == Approx(1.0));
    CHECK_THROWS_AS(axial_roots(Params{}.with_growth(0.3)), Error);
    CHECK(axial_equilibria(Params{}.with_growth(0.3)).empty());
  }

  TEST_CASE("interior state at growth 2.7") {
    const auto e = upper_coexisting(Params{}.with_growth(2.7));
    REQUIRE(e);
    CHECK(e->u == Approx(0.729094).epsilon(1e-6));
    CHECK(e->v == Approx(0.379094).epsilon(1e-6));
    CHECK(e->kind == EquilibriumKind::Coexisting);
  }

  TEST_CASE("cubic roots") {
    const auto r = real_cubic_roots(1.0, -6.0, 11.0, -6.0);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == Approx(1.0));
    CHECK(r[1] == Approx(2.0));
    CHECK(r[2] == Approx(3.0));
    const auto q = real_cubic_roots(0.0, 1.0, 0.0, -4.0);
    REQUIRE(q.size() == 2);
    CHECK(q[0] == Approx(-2.0));
  }

  TEST_CASE("classification of planar states") {
    CHECK(classify(-1.0, 0.1) == Stability::StableNode);
    CHECK(classify(-0.1, 1.0) == Stability::StableFocus);
    CHECK(classify(0.1, 1.0) == Stability::UnstableFocus);
    CHECK(classify(0.0, -1.0) == Stability::Saddle);
    CHECK(classify(0.0, 1.0) == Stability::NonHyperbolic);
  }

  TEST_CASE("saddle-node and transcritical thresholds") {
    const Params p;
    CHECK(sigma_sn(p) == 0.4);
    CHECK(sigma_tc(p) == Approx(0.43956044).epsilon(1e-8));
    Params q;
    q.saturation = 0.0;
    CHECK_THROWS_AS(sigma_tc(q), Error);
  }

  TEST_CASE("hopf point and first Lyapunov coefficient") {
    const Params p;
    const HopfPoint h = hopf_point(p, 1.5, 2.2);
    CHECK(h.growth == Approx(1.85660156).epsilon(1e-7));
    CHECK(h.state.u == Approx(0.598613).epsilon(1e-5));
    CHECK(h.state.v == Approx(0.248613).epsilon(1e-5));
    CHECK(h.det > 0.0);
    const double l1 = first_lyapunov_coefficient(p, h);
    CHECK(l1 / std::numbers::pi == Approx(-22.7488).epsilon(0.05));
    CHECK(normal_form_coefficient(p, h) < 0.0);
  }

  TEST_CASE("ratio-dependent limit has a subcritical hopf") {
    Params p;
    p.saturation = 0.0;
    const HopfPoint h = hopf_point(p, 3.8, 4.5);
    CHECK(h.growth == Approx(3.92397550).epsilon(1e-6));
    CHECK(first_lyapunov_coefficient(p, h) > 0.0);
    CHECK(normal_form_coefficient(p, h) > 0.0);
    const auto pair = coexisting_equilibria(p.with_growth(3.95));
    REQUIRE(pair.size() == 2);
    CHECK((pair[0].stability == Stability::Saddle) != (pair[1].stability == Stability::Saddle));
  }

  TEST_CASE("Holling limit keeps a single interior state") {
    Params p;
    p.interference = 0.0;
    for (double g : {1.0, 2.0, 3.0}) {
      const auto states = coexisting_equilibria(p.with_growth(g));
      REQUIRE(states.size() == 1);
      const Rates r = kinetics(states[0].u, states[0].v, p.with_growth(g));
      CHECK(std::abs(r.prey) < 1e-12);
      CHECK(std::abs(r.predator) < 1e-12);
    }
  }

  TEST_CASE("stability bound above which the interior state is stable") {
    const Params p = Params{}.with_growth(2.7);
    const auto e = *upper_coexisting(p);
    CHECK(sigma_s(e, p) == Approx(1.482487).epsilon(1e-6));
    CHECK(sigma_s(e, p) == Approx(1.4822).epsilon(5e-4));
    CHECK(p.growth > sigma_s(e, p));
    CHECK_THROWS_AS(sigma_s(Equilibrium{EquilibriumKind::Coexisting, 0.4, 0.1}, p), Error);
  }

  TEST_CASE("errors carry distinct exit statuses") {
    CHECK(exit_status(ErrorCode::InvalidArgument) == 2);
    CHECK(exit_status(ErrorCode::NoConvergence) == 4);
    CHECK(exit_status(ErrorCode::NoSignChange) == 3);
    try {
      fail(ErrorCode::OutOfRange, "x");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfRange);
    }
  }
}
