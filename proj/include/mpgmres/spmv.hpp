#pragma once

#include <span>
#include <vector>

#include "mpgmres/csr_matrix.hpp"

namespace mpgmres {

/// y <- A*x with each row accumulated in C. Rows are independent, so the
/// result does not depend on the thread count.
template <Real C, Real TA, Real TX, Real TY>
void spmv_as(const CsrMatrix<TA>& A, std::span<const TX> x, std::span<TY> y) {
  require_same_size(static_cast<std::size_t>(A.n_cols()), x.size(), "spmv input");
  require_same_size(static_cast<std::size_t>(A.n_rows()), y.size(), "spmv output");
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto va = A.values();
  const auto n = static_cast<std::ptrdiff_t>(A.n_rows());
#pragma omp parallel for schedule(static) if (n > 16384)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    C sum = 0;
    for (Offset k = rp[i]; k < rp[i + 1]; ++k) {
      sum += static_cast<C>(va[k]) * static_cast<C>(x[ci[k]]);
    }
    y[i] = static_cast<TY>(sum);
  }
}

template <Real T>
std::vector<T> spmv(const CsrMatrix<T>& A, std::span<const T> x) {
  std::vector<T> y(static_cast<std::size_t>(A.n_rows()));
  spmv_as<T>(A, x, std::span<T>(y));
  return y;
}

template <Real T>
std::vector<T> spmv(const CsrMatrix<T>& A, const std::vector<T>& x) {
  return spmv(A, std::span<const T>(x));
}

}  // namespace mpgmres
