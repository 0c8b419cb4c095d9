#include "allee/numerics/banded.hpp"

#include <algorithm>
#include <cmath>

#include "allee/errors.hpp"

namespace allee::num {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), ab_(static_cast<std::size_t>(ld_) * n, 0.0) {
  if (n <= 0 || kl < 0 || ku < 0) fail(ErrorCode::InvalidArgument, "bad band dimensions");
}

void BandedMatrix::set_zero() { std::fill(ab_.begin(), ab_.end(), 0.0); }

void BandedMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    const int j0 = std::max(0, i - kl_), j1 = std::min(n_ - 1, i + ku_);
    for (int j = j0; j <= j1; ++j) s += ab_[index(i, j)] * x[j];
    y[i] = s;
  }
}

BandedLU::BandedLU(BandedMatrix a) : lu_(std::move(a)), piv_(lu_.n_) {
  const int n = lu_.n_, kl = lu_.kl_, ku = lu_.ku_, ld = lu_.ld_;
  const int kv = ku + kl;
  double* ab = lu_.ab_.data();
  // fill-in rows above the original upper band start at zero
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < kl; ++r) ab[r + j * ld] = 0.0;

  int ju = 0;
  for (int j = 0; j < n; ++j) {
    const int km = std::min(kl, n - 1 - j);
    int jp = 0;
    double best = std::abs(ab[kv + j * ld]);
    for (int r = 1; r <= km; ++r) {
      const double v = std::abs(ab[kv + r + j * ld]);
      if (v > best) {
        best = v;
        jp = r;
      }
    }
    piv_[j] = j + jp;
    if (ab[kv + jp + j * ld] == 0.0) {
      singular_ = true;
      continue;
    }
    ju = std::max(ju, std::min(j + ku + jp, n - 1));
    if (jp != 0)
      for (int c = 0; c <= ju - j; ++c) std::swap(ab[(kv + jp - c) + (j + c) * ld], ab[(kv - c) + (j + c) * ld]);
    if (km > 0) {
      const double inv = 1.0 / ab[kv + j * ld];
      for (int r = 1; r <= km; ++r) ab[kv + r + j * ld] *= inv;
      for (int c = 1; c <= ju - j; ++c) {
        const double ujc = ab[(kv - c) + (j + c) * ld];
        if (ujc == 0.0) continue;
        for (int r = 1; r <= km; ++r) ab[(kv + r - c) + (j + c) * ld] -= ab[kv + r + j * ld] * ujc;
      }
    }
  }
}

void BandedLU::solve(std::span<double> b) const {
  if (singular_) fail(ErrorCode::SingularJacobian, "banded matrix is singular");
  const int n = lu_.n_, kl = lu_.kl_, ku = lu_.ku_, ld = lu_.ld_;
  const int kv = ku + kl;
  const double* ab = lu_.ab_.data();
  for (int j = 0; j < n - 1; ++j) {
    const int lm = std::min(kl, n - 1 - j);
    if (piv_[j] != j) std::swap(b[piv_[j]], b[j]);
    const double bj = b[j];
    if (bj != 0.0)
      for (int r = 1; r <= lm; ++r) b[j + r] -= ab[kv + r + j * ld] * bj;
  }
  for (int j = n - 1; j >= 0; --j) {
    b[j] /= ab[kv + j * ld];
    const double bj = b[j];
    if (bj == 0.0) continue;
    for (int i = std::max(0, j - kv); i < j; ++i) b[i] -= ab[kv + i - j + j * ld] * bj;
  }
}

int BandedLU::det_sign() const {
  int s = 1;
  const int kv = lu_.ku_ + lu_.kl_;
  for (int j = 0; j < lu_.n_; ++j) {
    const double d = lu_.ab_[kv + j * lu_.ld_];
    if (d == 0.0) return 0;
    if (d < 0.0) s = -s;
    if (piv_[j] != j) s = -s;
  }
  return s;
}

double BandedLU::log_abs_det() const {
  double s = 0.0;
  const int kv = lu_.ku_ + lu_.kl_;
  for (int j = 0; j < lu_.n_; ++j) s += std::log(std::abs(lu_.ab_[kv + j * lu_.ld_]));
  return s;
}

double BandedLU::pivot_ratio() const {
  const int kv = lu_.ku_ + lu_.kl_;
  double lo = INFINITY, hi = 0.0;
  for (int j = 0; j < lu_.n_; ++j) {
    const double d = std::abs(lu_.ab_[kv + j * lu_.ld_]);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi > 0.0 ? lo / hi : 0.0;
}

}  // namespace allee::num
