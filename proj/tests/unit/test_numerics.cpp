#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "allee/errors.hpp"
#include "allee/numerics/arnoldi.hpp"
#include "allee/numerics/banded.hpp"
#include "allee/numerics/dopri5.hpp"
#include "allee/numerics/roots.hpp"
#include "allee/numerics/tridiag.hpp"

using namespace allee;
using namespace allee::num;
using doctest::Approx;

namespace {

BandedMatrix random_banded(int n, int kl, int ku, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  BandedMatrix a(n, kl, ku);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) a(i, j) = U(rng);
  return a;
}

Eigen::MatrixXd dense(const BandedMatrix& a) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.size(), a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) m(i, j) = a(i, j);
  return m;
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("banded LU matches a dense solve and determinant") {
    for (auto [kl, ku] : {std::pair{2, 2}, {5, 5}, {1, 3}}) {
      const BandedMatrix a = random_banded(40, kl, ku, 3 + kl);
      const Eigen::MatrixXd m = dense(a);
      Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(40, -1.0, 2.0);
      const Eigen::VectorXd ref = m.partialPivLu().solve(b);
      std::vector<double> x(b.data(), b.data() + 40);
      const BandedLU lu(a);
      lu.solve(std::span<double>(x));
      for (int i = 0; i < 40; ++i) CHECK(x[i] == Approx(ref(i)).epsilon(1e-10));
      const double det = m.determinant();
      CHECK(lu.det_sign() == (det > 0 ? 1 : -1));
      CHECK(lu.log_abs_det() == Approx(std::log(std::abs(det))).epsilon(1e-10));
    }
  }

  TEST_CASE("singular banded matrix is reported") {
    BandedMatrix a(4, 1, 1);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;
    a(2, 2) = 0.0;
    a(3, 3) = 1.0;
    const BandedLU lu(a);
    CHECK(lu.singular());
    std::vector<double> b(4, 1.0);
    CHECK_THROWS_AS(lu.solve(std::span<double>(b)), Error);
  }

  TEST_CASE("tridiagonal solve") {
    const int n = 50;
    std::vector<double> lo(n, -1.0), di(n, 4.0), up(n, -1.5);
    const Tridiagonal t(lo, di, up);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = std::sin(0.3 * i);
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = di[i] * x[i] + (i > 0 ? lo[i] * x[i - 1] : 0.0) + (i + 1 < n ? up[i] * x[i + 1] : 0.0);
    t.solve(b);
    for (int i = 0; i < n; ++i) CHECK(b[i] == Approx(x[i]).epsilon(1e-12));
  }

  TEST_CASE("root finding") {
    CHECK(find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14) == Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, 0.0, 2.0, 1e-12), Error);
    const auto roots = find_roots([](double x) { return std::sin(x); }, 0.5, 10.0, 200, 1e-12);
    REQUIRE(roots.size() == 3);
    CHECK(roots[2] == Approx(3.0 * std::numbers::pi).epsilon(1e-10));
  }

  TEST_CASE("Dormand-Prince on the harmonic oscillator") {
    std::array<double, 2> y{1.0, 0.0};
    int samples = 0;
    const auto stats = dopri5<2>(
        [](double, const std::array<double, 2>& s, std::array<double, 2>& f) {
          f[0] = s[1];
          f[1] = -s[0];
        },
        y, 0.0, 10.0, 0.5, Dopri5Options{1e-10, 1e-12}, [](std::array<double, 2>&) {},
        [&](double, const std::array<double, 2>&) {
          ++samples;
          return true;
        });
    CHECK(samples >= 20);
    CHECK(stats.status == Dopri5Status::Completed);
    CHECK(y[0] == Approx(std::cos(10.0)).epsilon(1e-8));
    CHECK(y[1] == Approx(-std::sin(10.0)).epsilon(1e-8));
  }

  TEST_CASE("shift-invert Arnoldi finds the rightmost eigenvalues") {
    const int n = 60;
    BandedMatrix a(n, 1, 1);
    for (int i = 0; i < n; ++i) {
      a(i, i) = -0.1 * i;
      if (i + 1 < n) a(i, i + 1) = 0.05;
      if (i > 0) a(i, i - 1) = 0.05;
    }
    a(0, 0) = 0.3;
    const Eigen::VectorXcd ref = Eigen::EigenSolver<Eigen::MatrixXd>(dense(a)).eigenvalues();
    std::vector<double> re(n);
    for (int i = 0; i < n; ++i) re[i] = ref(i).real();
    std::sort(re.rbegin(), re.rend());
    const auto ritz = shift_invert_arnoldi(a, gershgorin_right_edge(a) + 0.05, 30, 1);
    REQUIRE(ritz.size() >= 3);
    for (int k = 0; k < 3; ++k) CHECK(ritz[k].value.real() == Approx(re[k]).epsilon(1e-8));
  }
}
