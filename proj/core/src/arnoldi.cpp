#include "allee/numerics/arnoldi.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "allee/errors.hpp"

namespace allee::num {

double gershgorin_right_edge(const BandedMatrix& a) {
  double edge = -INFINITY;
  const int n = a.size();
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = std::max(0, i - a.lower()); j <= std::min(n - 1, i + a.upper()); ++j)
      if (j != i) off += std::abs(a(i, j));
    edge = std::max(edge, a(i, i) + off);
  }
  return edge;
}

std::vector<RitzPair> shift_invert_arnoldi(const BandedMatrix& a, double shift, int krylov_dim, unsigned seed) {
  const int n = a.size();
  const int m = std::min(krylov_dim, n);
  BandedMatrix shifted = a;
  for (int i = 0; i < n; ++i) shifted(i, i) -= shift;
  const BandedLU lu(std::move(shifted));
  if (lu.singular()) fail(ErrorCode::EigSolverStall, "shift coincides with an eigenvalue");

  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  V.col(0) = v.normalized();

  int k = m;
  std::vector<double> buf(n);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) buf[i] = V(i, j);
    lu.solve(std::span<double>(buf));
    Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(buf.data(), n);
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd c = V.leftCols(j + 1).transpose() * w;
      w -= V.leftCols(j + 1) * c;
      H.col(j).head(j + 1) += c;
    }
    const double beta = w.norm();
    H(j + 1, j) = beta;
    if (beta < 1e-13 * H.col(j).head(j + 1).norm()) {
      k = j + 1;
      break;
    }
    V.col(j + 1) = w / beta;
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(k, k));
  if (es.info() != Eigen::Success) fail(ErrorCode::EigSolverStall, "Hessenberg eigenproblem failed");
  const double tail = H(k, k - 1);
  std::vector<RitzPair> out;
  for (int i = 0; i < k; ++i) {
    const std::complex<double> mu = es.eigenvalues()[i];
    const Eigen::VectorXcd y = es.eigenvectors().col(i);
    RitzPair r;
    r.value = shift + 1.0 / mu;
    r.residual = std::abs(tail) * std::abs(y[k - 1]) / (std::abs(mu) * y.norm());
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const RitzPair& x, const RitzPair& y) { return x.value.real() > y.value.real(); });
  return out;
}

}  // namespace allee::num
