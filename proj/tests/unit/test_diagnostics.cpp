#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "allee/diagnostics.hpp"

using namespace allee;
using doctest::Approx;

TEST_SUITE("diagnostics") {
  TEST_CASE("period of a sinusoid") {
    std::vector<double> t, s;
    for (int i = 0; i < 4000; ++i) {
      t.push_back(0.5 * i);
      s.push_back(std::sin(2.0 * std::numbers::pi * t.back() / 97.0));
    }
    const auto period = dominant_period(t, s, 2000.0);
    REQUIRE(period.has_value());
    CHECK(*period == Approx(97.0).epsilon(5e-3));
  }

  TEST_CASE("period-doubled signal reports the full period") {
    std::vector<double> t, s;
    for (int i = 0; i < 8000; ++i) {
      t.push_back(0.5 * i);
      const double ph = 2.0 * std::numbers::pi * t.back() / 100.0;
      s.push_back(std::sin(ph) + 0.15 * std::sin(0.5 * ph));
    }
    const auto period = dominant_period(t, s, 4000.0);
    REQUIRE(period.has_value());
    CHECK(*period == Approx(200.0).epsilon(5e-3));
  }

  TEST_CASE("constant and noisy series have no period") {
    std::vector<double> t, s(1000, 1.0);
    for (int i = 0; i < 1000; ++i) t.push_back(i);
    CHECK_FALSE(dominant_period(t, s, 1000.0).has_value());
    unsigned state = 12345;
    for (auto& x : s) {
      state = state * 1664525u + 1013904223u;
      x = static_cast<double>(state) / 4294967296.0;
    }
    CHECK_FALSE(dominant_period(t, s, 1000.0).has_value());
  }

  TEST_CASE("island counting") {
    Field f = constant_field({100.0, 101}, 0.0, 0.0);
    CHECK(island_count(f, 0.05) == 0);
    for (int i : {0, 1, 10, 11, 12, 50, 100}) f.u[i] = 0.5;
    CHECK(island_count(f, 0.05) == 4);
  }

  TEST_CASE("lyapunov exponent of a settled state is negative") {
    const Params p = Params{}.with_growth(2.5);
    const Grid g{50.0, 65};
    const auto e = *upper_coexisting(p);
    const Simulator sim(g, p, 5.0, 0.05);
    LyapunovOptions opt;
    opt.duration = 200.0;
    opt.seed = 3;
    opt.require_settled = false;
    const auto r = largest_lyapunov(constant_field(g, e.u, e.v), sim, opt);
    CHECK(r.lambda_max < 0.0);
    CHECK(r.times.size() == r.running.size());
  }
}
