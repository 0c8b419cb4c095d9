#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "allee/equilibria.hpp"
#include "allee/errors.hpp"
#include "allee/pde.hpp"

using namespace allee;
using doctest::Approx;

TEST_SUITE("pde-sim") {
  TEST_CASE("homogeneous interior state is preserved") {
    const Params p;
    const auto e = *upper_coexisting(p);
    Field f = constant_field({200.0, 257}, e.u, e.v);
    const Simulator sim(f.grid, p, 46.0, 0.05);
    for (int i = 0; i < 200; ++i) sim.advance(f);
    for (int i = 0; i < f.grid.points; ++i) {
      CHECK(f.u[i] == Approx(e.u).epsilon(1e-9));
      CHECK(f.v[i] == Approx(e.v).epsilon(1e-9));
    }
    CHECK(f.t == Approx(10.0));
  }

  TEST_CASE("seeded noise is reproducible") {
    const Grid g{200.0, 129};
    const auto a = perturbed_homogeneous(g, Params{}, 1e-3, 7);
    const auto b = perturbed_homogeneous(g, Params{}, 1e-3, 7);
    const auto c = perturbed_homogeneous(g, Params{}, 1e-3, 8);
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
    CHECK(a.u != c.u);
  }

  TEST_CASE("trapezoid integrals") {
    const std::vector<double> w(11, 2.0);
    CHECK(integral(w, 0.1) == Approx(2.0));
    CHECK(spatial_mean(w, 0.1) == Approx(2.0));
    CHECK(spatial_variance(w, 0.1) == Approx(0.0));
    CHECK(l2_norm(w, 0.1) == Approx(std::sqrt(4.0)));
  }

  TEST_CASE("strang and imex agree on a short run") {
    const Params p = Params{}.with_growth(2.2);
    const Grid g{50.0, 101};
    Field a = perturbed_homogeneous(g, p, 1e-2, 3), b = a;
    const Simulator s1(g, p, 46.0, 0.005, Scheme::Strang), s2(g, p, 46.0, 0.005, Scheme::ImexEuler);
    for (int i = 0; i < 200; ++i) {
      s1.advance(a);
      s2.advance(b);
    }
    double diff = 0.0;
    for (int i = 0; i < g.points; ++i) diff = std::max(diff, std::abs(a.u[i] - b.u[i]));
    CHECK(diff < 1e-3);
  }

  TEST_CASE("sub-threshold prey collapses") {
    const Params p = Params{}.with_growth(2.7);
    const Grid g{100.0, 201};
    const double u2 = axial_roots(p).lower;
    Field f = constant_field(g, 0.5 * u2, 0.05);
    const Simulator sim(g, p, 46.0, 0.05);
    RunOptions opt;
    opt.duration = 400.0;
    const auto rec = run(f, sim, opt);
    CHECK(*std::max_element(f.u.begin(), f.u.end()) < 1e-4);
    CHECK(*std::max_element(f.v.begin(), f.v.end()) < 1e-4);
    CHECK(rec.min_value >= -1e-12);
  }

  TEST_CASE("invasion front advances to the right") {
    const Params p;
    const Grid g{400.0, 801};
    Field f = invasion_step(g, p, 50.0);
    const Simulator sim(g, p, 46.0, 0.05);
    const double x0 = front_position(f, 0.05);
    std::vector<double> ts, xs;
    RunOptions opt;
    opt.duration = 40.0;
    opt.summary_every = 1.0;
    opt.on_summary = [&](const Field& s) {
      ts.push_back(s.t);
      xs.push_back(front_position(s, 0.05));
    };
    run(f, sim, opt);
    CHECK(front_position(f, 0.05) > x0);
    const double c = measure_front_speed(ts, xs, 20.0, 40.0);
    CHECK(c > 0.0);
    CHECK(c < 6.0);
  }

  TEST_CASE("asymptotic classifier") {
    SpaceTimeRecord rec;
    for (int i = 0; i <= 1000; ++i) {
      rec.t.push_back(i);
      rec.u_av.push_back(0.7);
      rec.v_av.push_back(0.3);
      rec.var_u.push_back(0.0);
      rec.rate.push_back(1e-9);
    }
    CHECK(classify_asymptotic(rec, 500.0) == Asymptotic::Homogeneous);
    for (auto& v : rec.var_u) v = 1e-3;
    CHECK(classify_asymptotic(rec, 500.0) == Asymptotic::StationaryPattern);
    for (std::size_t i = 0; i < rec.t.size(); ++i) {
      rec.u_av[i] = 0.7 + 0.1 * std::sin(2.0 * std::numbers::pi * rec.t[i] / 50.0);
      rec.rate[i] = 1e-2;
    }
    CHECK(classify_asymptotic(rec, 500.0) == Asymptotic::Oscillatory);
  }

  TEST_CASE("half-max support of a localized bump") {
    Field f = constant_field({100.0, 101}, 0.5, 0.2);
    for (int i = 45; i <= 55; ++i) f.u[i] = 0.9;
    CHECK(half_max_support(f, 0.5) == Approx(11.0 / 101.0).epsilon(0.1));
  }

  TEST_CASE("grid validation") {
    Grid g{200.0, 2};
    CHECK_THROWS_AS(g.validate(), Error);
  }
}
