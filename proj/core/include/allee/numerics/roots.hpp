#pragma once

#include <functional>
#include <vector>

namespace allee::num {

using ScalarFn = std::function<double(double)>;

// Bisection on a sign-changing bracket, finished with secant steps kept inside the bracket.
// Throws NoSignChange when f(lo) and f(hi) have the same strict sign.
double find_root(const ScalarFn& f, double lo, double hi, double tol = 1e-10, int max_iter = 200);

// All sign changes of f on a uniform sampling of [lo, hi], each refined with find_root.
// Samples where f throws are treated as gaps.
std::vector<double> find_roots(const ScalarFn& f, double lo, double hi, int samples,
                               double tol = 1e-10);

}  // namespace allee::num
