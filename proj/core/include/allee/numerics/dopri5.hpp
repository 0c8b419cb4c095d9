#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace allee::num {

struct Dopri5Options {
  double rtol = 1e-8;
  double atol = 1e-12;
  double h0 = 0.0;  // 0 picks a starting step from the tolerances
  double hmax = std::numeric_limits<double>::infinity();
  double hmin = 1e-14;
  long max_steps = 50'000'000;
};

enum class Dopri5Status { Completed, Stopped, StepSizeUnderflow, MaxSteps, NonFinite };

struct Dopri5Stats {
  Dopri5Status status = Dopri5Status::Completed;
  double t = 0.0;
  long accepted = 0;
  long rejected = 0;
};

// Dormand-Prince 5(4) with the 4th order continuous extension.
// rhs(t, y, dydt); project(y) may modify an accepted state (e.g. positivity);
// sample(t, y) is called at t0 + k*dt_sample and returns false to stop.
template <std::size_t N, class Rhs, class Project, class Sample>
Dopri5Stats dopri5(Rhs&& rhs, std::array<double, N>& y, double t0, double t1, double dt_sample,
                   const Dopri5Options& opt, Project&& project, Sample&& sample) {
  using V = std::array<double, N>;
  constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
  constexpr double a21 = 0.2, a31 = 3.0 / 40.0, a32 = 9.0 / 40.0, a41 = 44.0 / 45.0, a42 = -56.0 / 15.0,
                   a43 = 32.0 / 9.0, a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                   a54 = -212.0 / 729.0, a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                   a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0, a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                   a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                   e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  Dopri5Stats st;
  st.t = t0;
  double t = t0;
  V k1, k2, k3, k4, k5, k6, k7, yt, ynew;
  rhs(t, y, k1);

  auto axpy = [](V& out, const V& base, double h, std::initializer_list<std::pair<double, const V*>> terms) {
    for (std::size_t i = 0; i < N; ++i) {
      double s = 0.0;
      for (const auto& [c, k] : terms) s += c * (*k)[i];
      out[i] = base[i] + h * s;
    }
  };

  double h = opt.h0;
  if (h <= 0.0) {
    double n0 = 0.0, n1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.atol + opt.rtol * std::abs(y[i]);
      n0 += (y[i] / sc) * (y[i] / sc);
      n1 += (k1[i] / sc) * (k1[i] / sc);
    }
    h = (n0 < 1e-10 || n1 < 1e-10) ? 1e-6 : 0.01 * std::sqrt(n0 / n1);
    h = std::min(h, opt.hmax);
  }

  long ks = 0;
  double next_sample = t0;
  if (dt_sample > 0.0) {
    if (!sample(t, y)) {
      st.status = Dopri5Status::Stopped;
      return st;
    }
    next_sample = t0 + (++ks) * dt_sample;
  }

  long steps = 0;
  while (t < t1) {
    if (++steps > opt.max_steps) {
      st.status = Dopri5Status::MaxSteps;
      break;
    }
    h = std::min({h, opt.hmax, t1 - t});
    axpy(yt, y, h, {{a21, &k1}});
    rhs(t + c2 * h, yt, k2);
    axpy(yt, y, h, {{a31, &k1}, {a32, &k2}});
    rhs(t + c3 * h, yt, k3);
    axpy(yt, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    rhs(t + c4 * h, yt, k4);
    axpy(yt, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    rhs(t + c5 * h, yt, k5);
    axpy(yt, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    rhs(t + h, yt, k6);
    axpy(ynew, y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    rhs(t + h, ynew, k7);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (e / sc) * (e / sc);
      finite = finite && std::isfinite(ynew[i]);
    }
    err = std::sqrt(err / N);
    if (!finite) {
      st.status = Dopri5Status::NonFinite;
      if (h <= opt.hmin) break;
      h *= 0.1;
      continue;
    }
    const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 10.0);
    if (err > 1.0) {
      ++st.rejected;
      h *= std::max(fac, 0.2);
      if (h < opt.hmin) {
        st.status = Dopri5Status::StepSizeUnderflow;
        break;
      }
      continue;
    }
    ++st.accepted;

    if (dt_sample > 0.0) {
      V r1 = y, r2, r3, r4, r5;
      for (std::size_t i = 0; i < N; ++i) {
        r2[i] = ynew[i] - y[i];
        r3[i] = h * k1[i] - r2[i];
        r4[i] = r2[i] - h * k7[i] - r3[i];
        r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      bool stop = false;
      while (next_sample <= t + h * (1.0 + 1e-12) && next_sample <= t1 * (1.0 + 1e-15)) {
        const double th = (next_sample - t) / h, th1 = 1.0 - th;
        V ys;
        for (std::size_t i = 0; i < N; ++i) ys[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        project(ys);
        if (!sample(next_sample, ys)) {
          stop = true;
          break;
        }
        next_sample = t0 + (++ks) * dt_sample;
      }
      if (stop) {
        y = ynew;
        project(y);
        st.t = t + h;
        st.status = Dopri5Status::Stopped;
        return st;
      }
    }

    t += h;
    y = ynew;
    project(y);
    rhs(t, y, k1);
    st.t = t;
    st.status = Dopri5Status::Completed;
    h *= std::min(fac, 5.0);
  }
  return st;
}

}  // namespace allee::num
