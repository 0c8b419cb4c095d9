#include <doctest.h>

#include <cmath>
#include <numbers>

#include "allee/equilibria.hpp"
#include "allee/errors.hpp"
#include "allee/linear.hpp"

using namespace allee;
using doctest::Approx;

TEST_SUITE("linear-analysis") {
  TEST_CASE("turing and belyakov-devaney thresholds") {
    const auto th = turing_bd_thresholds(Params{}, 46.0, 1.0, 3.0);
    REQUIRE(th.size() == 2);
    CHECK(th[0].growth == Approx(1.861181).epsilon(1e-6));
    CHECK(th[0].regime == SpatialRegime::TuringSide);
    CHECK(th[0].K < 0.0);
    CHECK(th[1].growth == Approx(2.097685).epsilon(1e-6));
    CHECK(th[1].regime == SpatialRegime::BDSide);
    CHECK(th[1].K > 0.0);
  }

  TEST_CASE("spectrum between the thresholds is a complex quartet") {
    const Params p = Params{}.with_growth(2.0);
    const auto sp = spatial_spectrum(*upper_coexisting(p), p, 46.0);
    CHECK(sp.regime == SpatialRegime::Generic);
    for (const auto& z : sp.lambdas) CHECK(std::abs(z.imag()) > 0.0);
  }

  TEST_CASE("branch points of Neumann modes") {
    const Params p;
    const auto n19 = branch_point_sigmas(p, 46.0, 200.0, 19, 1.5, 1.9);
    const auto n20 = branch_point_sigmas(p, 46.0, 200.0, 20, 1.5, 1.9);
    const auto n21 = branch_point_sigmas(p, 46.0, 200.0, 21, 1.5, 1.9);
    REQUIRE(n19.size() == 1);
    REQUIRE(n20.size() == 1);
    REQUIRE(n21.size() == 1);
    CHECK(n19[0] == Approx(1.78926).epsilon(1e-5));
    CHECK(n20[0] == Approx(1.77056).epsilon(1e-5));
    CHECK(n21[0] == Approx(1.74957).epsilon(1e-5));
  }

  TEST_CASE("no branch point above the turing threshold") {
    for (int n = 1; n <= 60; ++n) CHECK_THROWS_AS(branch_point_sigmas(Params{}, 46.0, 200.0, n, 1.8612, 3.0), Error);
  }

  TEST_CASE("mode reports below the turing threshold") {
    const Params p = Params{}.with_growth(1.86);
    const auto e = *upper_coexisting(p);
    const auto modes = mode_reports(e, p, 46.0, 200.0, default_mode_count(e, p, 46.0, 200.0));
    int unstable = 0;
    for (const auto& m : modes) {
      CHECK(m.k == Approx(std::pow(m.j * std::numbers::pi / 200.0, 2)));
      unstable += m.unstable;
    }
    CHECK(unstable > 0);
    CHECK_FALSE(modes.front().unstable);
  }

  TEST_CASE("band edges bracket the unstable modes") {
    const Params p = Params{}.with_growth(1.8);
    const auto e = *upper_coexisting(p);
    const auto band = kpm_roots(e, p, 46.0);
    CHECK(band.k_minus < band.k_plus);
    for (const auto& m : mode_reports(e, p, 46.0, 200.0, 80))
      if (m.det < 0.0) CHECK((m.k > band.k_minus && m.k < band.k_plus));
  }

  TEST_CASE("non-existence diffusion bound") {
    Params p;
    p.saturation = 0.2;
    p.interference = 2.4;
    p.conversion = 1.3;
    p.growth = 1.5;
    p.mortality = 0.1;
    const auto b = nonexistence_dstar(p, 1.0);
    CHECK(b.d_star == Approx(0.443883).epsilon(1e-6));
    CHECK(b.k1 == Approx(std::numbers::pi * std::numbers::pi));
  }

  TEST_CASE("steady-state bounds") {
    const Params p = Params{}.with_growth(2.0);
    const auto b = vbounds(p);
    CHECK(b.u_bound == Approx(axial_roots(p).upper));
    CHECK(b.v_bound > upper_coexisting(p)->v);
    CHECK(vbounds(Params{}).v_bound == Approx(0.6634).epsilon(1e-3));
    CHECK(vbounds(Params{}.with_growth(0.4)).degenerate);
  }
}
