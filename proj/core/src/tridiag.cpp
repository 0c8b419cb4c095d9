#include "allee/numerics/tridiag.hpp"

#include "allee/errors.hpp"

namespace allee::num {

Tridiagonal::Tridiagonal(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper)
    : lower_(std::move(lower)), diag_(std::move(diag)) {
  const std::size_t n = diag_.size();
  if (lower_.size() != n || upper.size() != n) fail(ErrorCode::InvalidArgument, "tridiagonal size mismatch");
  inv_diag_.resize(n);
  upper_mod_.resize(n);
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double piv = diag_[i] - (i > 0 ? lower_[i] * prev : 0.0);
    if (piv == 0.0) fail(ErrorCode::SingularJacobian, "zero pivot in tridiagonal solve");
    inv_diag_[i] = 1.0 / piv;
    upper_mod_[i] = upper[i] * inv_diag_[i];
    prev = upper_mod_[i];
  }
}

void Tridiagonal::solve(std::span<double> x) const {
  const std::size_t n = diag_.size();
  x[0] *= inv_diag_[0];
  for (std::size_t i = 1; i < n; ++i) x[i] = (x[i] - lower_[i] * x[i - 1]) * inv_diag_[i];
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= upper_mod_[i] * x[i + 1];
}

}  // namespace allee::num
