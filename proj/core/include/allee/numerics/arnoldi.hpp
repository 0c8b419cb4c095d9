#pragma once

#include <complex>
#include <vector>

#include "allee/numerics/banded.hpp"

namespace allee::num {

struct RitzPair {
  std::complex<double> value;  // eigenvalue of A
  double residual = 0.0;       // residual estimate of the shifted-inverse problem, relative
};

// Eigenvalues of A closest to `shift` through Arnoldi on (A - shift I)^{-1}, with full
// re-orthogonalisation. Sorted by decreasing real part.
std::vector<RitzPair> shift_invert_arnoldi(const BandedMatrix& a, double shift, int krylov_dim,
                                           unsigned seed = 7);

// Upper end of the Gershgorin region of A along the real axis.
double gershgorin_right_edge(const BandedMatrix& a);

}  // namespace allee::num
