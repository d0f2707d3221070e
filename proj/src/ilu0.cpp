#include "mpgmres/ilu0.hpp"

#include <cmath>

namespace mpgmres {

namespace {

template <Real T>
std::vector<Offset> locate_diagonal(const CsrMatrix<T>& A) {
  std::vector<Offset> diag(static_cast<std::size_t>(A.n_rows()));
  for (Index i = 0; i < A.n_rows(); ++i) {
    const Offset d = A.pattern()->find(i, i);
    if (d < 0) throw FactorizationError(static_cast<std::size_t>(i), "diagonal entry missing from pattern");
    diag[i] = d;
  }
  return diag;
}

}  // namespace

// IKJ ordering: row i is eliminated against the already final rows k < i,
// touching only positions present in row i's pattern.
template <Real T>
Ilu0<T> Ilu0<T>::factorize(const CsrMatrix<T>& A) {
  if (!A.is_square()) throw DimensionError("ILU(0) needs a square matrix");
  std::vector<Offset> diag = locate_diagonal(A);
  std::vector<T> lu(A.values().begin(), A.values().end());
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto n = static_cast<std::size_t>(A.n_rows());
  std::vector<Offset> where(n, -1);

  for (std::size_t i = 0; i < n; ++i) {
    for (Offset p = rp[i]; p < rp[i + 1]; ++p) where[ci[p]] = p;
    for (Offset p = rp[i]; p < diag[i]; ++p) {
      const auto k = static_cast<std::size_t>(ci[p]);
      const T pivot = lu[diag[k]];
      const T lik = lu[p] / pivot;
      lu[p] = lik;
      for (Offset q = diag[k] + 1; q < rp[k + 1]; ++q) {
        const Offset target = where[ci[q]];
        if (target >= 0) lu[target] -= lik * lu[q];
      }
    }
    const T piv = lu[diag[i]];
    if (piv == T(0) || !std::isfinite(piv)) {
      throw FactorizationError(i, piv == T(0) ? "zero pivot" : "non-finite pivot");
    }
    for (Offset p = rp[i]; p < rp[i + 1]; ++p) where[ci[p]] = -1;
  }
  return Ilu0(CsrMatrix<T>(A.pattern(), std::move(lu)), std::move(diag));
}

template <Real T>
Ilu0<T> Ilu0<T>::from_factors(CsrMatrix<T> lu) {
  if (!lu.is_square()) throw DimensionError("ILU(0) factors must be square");
  std::vector<Offset> diag = locate_diagonal(lu);
  for (Index i = 0; i < lu.n_rows(); ++i) {
    if (lu.values()[diag[i]] == T(0)) throw FactorizationError(static_cast<std::size_t>(i), "zero pivot");
  }
  return Ilu0(std::move(lu), std::move(diag));
}

template class Ilu0<float>;
template class Ilu0<double>;

}  // namespace mpgmres
