#pragma once

#include <span>
#include <vector>

namespace allee::num {

// General band matrix in LAPACK band layout with room for pivoting fill-in.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  bool in_band(int i, int j) const { return j - i <= ku_ && i - j <= kl_; }
  double& operator()(int i, int j) { return ab_[index(i, j)]; }
  double operator()(int i, int j) const { return in_band(i, j) ? ab_[index(i, j)] : 0.0; }

  void set_zero();
  // y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  friend class BandedLU;
  int index(int i, int j) const { return (kl_ + ku_ + i - j) + j * ld_; }

  int n_ = 0, kl_ = 0, ku_ = 0, ld_ = 0;
  std::vector<double> ab_;
};

// LU factorization with partial pivoting (row interchanges), as in dgbtrf.
class BandedLU {
 public:
  explicit BandedLU(BandedMatrix a);

  bool singular() const { return singular_; }
  // Solves A x = b in place. Throws SingularJacobian if the factorization hit a zero pivot.
  void solve(std::span<double> b) const;
  [[nodiscard]] std::vector<double> solve(std::vector<double> b) const {
    solve(std::span<double>(b));
    return b;
  }
  int det_sign() const;
  double log_abs_det() const;
  // Smallest |U_jj| relative to the largest.
  double pivot_ratio() const;

 private:
  BandedMatrix lu_;
  std::vector<int> piv_;
  bool singular_ = false;
};

}  // namespace allee::num
