#pragma once

#include <span>
#include <vector>

namespace allee::num {

// Pre-factored tridiagonal solver (Thomas algorithm without pivoting; for diagonally
// dominant systems). Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1].
class Tridiagonal {
 public:
  Tridiagonal() = default;
  Tridiagonal(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper);

  int size() const { return static_cast<int>(diag_.size()); }
  void solve(std::span<double> rhs) const;

 private:
  std::vector<double> lower_, inv_diag_, upper_mod_;
  std::vector<double> diag_;
};

}  // namespace allee::num
