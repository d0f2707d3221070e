#pragma once
// Dense reference computations for the tests. Everything here is independent
// of the library's kernels: Eigen does the linear algebra.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mpgmres/csr_matrix.hpp"

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

template <class T>
Mat dense(const mpgmres::CsrMatrix<T>& A) {
  Mat D = Mat::Zero(A.n_rows(), A.n_cols());
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto va = A.values();
  for (mpgmres::Index i = 0; i < A.n_rows(); ++i) {
    for (auto k = rp[i]; k < rp[i + 1]; ++k) D(i, ci[k]) = static_cast<double>(va[k]);
  }
  return D;
}

inline mpgmres::CsrMatrix<double> sparse(const Mat& D) {
  std::vector<double> rm(static_cast<std::size_t>(D.size()));
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    for (Eigen::Index j = 0; j < D.cols(); ++j) rm[static_cast<std::size_t>(i * D.cols() + j)] = D(i, j);
  }
  return mpgmres::CsrMatrix<double>::from_dense(static_cast<mpgmres::Index>(D.rows()),
                                                static_cast<mpgmres::Index>(D.cols()), rm);
}

inline Vec vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

inline std::vector<double> stdvec(const Vec& v) { return {v.data(), v.data() + v.size()}; }

inline Mat random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = u(rng);
  }
  return M;
}

inline Vec random_vector(Eigen::Index n, std::mt19937_64& rng) { return random_matrix(n, 1, rng).col(0); }

/// Random matrix with density `density`, plus n on the diagonal: diagonally
/// dominant, so well conditioned.
inline Mat well_conditioned(Eigen::Index n, std::mt19937_64& rng, double density = 0.5) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(density);
  Mat M = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || keep(rng)) M(i, j) = u(rng);
    }
    M(i, i) += static_cast<double>(n);
  }
  return M;
}

/// Gaussian elimination with partial pivoting.
inline Vec solve(const Mat& A, const Vec& b) { return A.partialPivLu().solve(b); }

/// min_y ||beta e1 - H y||_2 for a (j+1) x j Hessenberg matrix, via QR.
// min_y ||beta e1 - H y|| for full-column-rank H with one more row than
// columns: the trailing entry of Q^T (beta e1) from a Householder QR.
// Recomputing ||beta e1 - H y|| instead cancels once the residual nears u * beta.
inline double hessenberg_ls_residual(const Mat& H, double beta) {
  Vec rhs = Vec::Zero(H.rows());
  rhs(0) = beta;
  Eigen::HouseholderQR<Mat> qr(H);
  const Vec qtb = qr.householderQ().transpose() * rhs;
  return qtb.tail(H.rows() - H.cols()).norm();
}

inline double spectral_norm(const Mat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(M);
  return svd.singularValues()(0);
}

inline double max_abs(const Mat& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

inline double rel_diff(const Vec& a, const Vec& b) { return (a - b).norm() / b.norm(); }

}  // namespace oracle
