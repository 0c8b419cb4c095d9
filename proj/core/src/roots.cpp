#include "allee/numerics/roots.hpp"

#include <cmath>
#include <sstream>

#include "allee/errors.hpp"

namespace allee::num {

double find_root(const ScalarFn& f, double lo, double hi, double tol, int max_iter) {
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    std::ostringstream os;
    os << "f(" << lo << ")=" << flo << " and f(" << hi << ")=" << fhi << " have the same sign";
    fail(ErrorCode::NoSignChange, os.str());
  }
  // Illinois regula falsi; every third step is a plain bisection so the bracket always shrinks.
  int side = 0;
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    double x;
    if (it % 3 == 2) {
      x = 0.5 * (lo + hi);
    } else {
      x = (lo * fhi - hi * flo) / (fhi - flo);
      if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    }
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == (flo > 0)) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> find_roots(const ScalarFn& f, double lo, double hi, int samples, double tol) {
  std::vector<double> roots;
  if (samples < 2) samples = 2;
  double xprev = lo, fprev = NAN;
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / (samples - 1);
    double fx = NAN;
    try {
      fx = f(x);
    } catch (const Error&) {
      fx = NAN;
    }
    if (std::isfinite(fx) && std::isfinite(fprev)) {
      if (fx == 0.0) roots.push_back(x);
      else if (fprev != 0.0 && (fx > 0) != (fprev > 0)) roots.push_back(find_root(f, xprev, x, tol));
    }
    xprev = x;
    fprev = fx;
  }
  return roots;
}

}  // namespace allee::num
