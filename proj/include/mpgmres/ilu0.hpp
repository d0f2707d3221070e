#pragma once

#include <span>
#include <vector>

#include "mpgmres/convert.hpp"
#include "mpgmres/csr_matrix.hpp"

namespace mpgmres {

/// ILU(0) factors stored in one CSR array on A's pattern: the strictly lower
/// part holds L (unit diagonal implied), the rest holds U.
template <Real T>
class Ilu0 {
 public:
  /// Factorizes in T. Throws FactorizationError naming the row when a
  /// diagonal entry is missing from the pattern or a pivot becomes zero.
  static Ilu0 factorize(const CsrMatrix<T>& A);

  /// Wraps precomputed combined factors (e.g. after a precision change).
  static Ilu0 from_factors(CsrMatrix<T> lu);

  const CsrMatrix<T>& factors() const noexcept { return lu_; }
  std::size_t nnz() const noexcept { return lu_.nnz(); }
  Index size() const noexcept { return lu_.n_rows(); }
  std::span<const Offset> diagonal_positions() const noexcept { return diag_; }

  /// r <- U^{-1} L^{-1} z, arithmetic in C. r may alias z.
  template <Real C, Real TZ, Real TR>
  void apply_as(std::span<const TZ> z, std::span<TR> r) const;

  std::vector<T> apply(std::span<const T> z) const {
    std::vector<T> r(z.size());
    apply_as<T>(z, std::span<T>(r));
    return r;
  }
  std::vector<T> apply(const std::vector<T>& z) const { return apply(std::span<const T>(z)); }

  template <Real To>
  Ilu0<To> converted() const {
    return Ilu0<To>::from_factors(convert_precision<To>(lu_));
  }

 private:
  Ilu0(CsrMatrix<T> lu, std::vector<Offset> diag) : lu_(std::move(lu)), diag_(std::move(diag)) {}

  CsrMatrix<T> lu_;
  std::vector<Offset> diag_;
};

template <Real T>
template <Real C, Real TZ, Real TR>
void Ilu0<T>::apply_as(std::span<const TZ> z, std::span<TR> r) const {
  const auto n = static_cast<std::size_t>(lu_.n_rows());
  require_same_size(z.size(), n, "ilu0 apply input");
  require_same_size(r.size(), n, "ilu0 apply output");
  const auto rp = lu_.row_ptr();
  const auto ci = lu_.col_idx();
  const auto va = lu_.values();

  // L y = z, unit diagonal. y overwrites r.
  for (std::size_t i = 0; i < n; ++i) {
    C sum = static_cast<C>(z[i]);
    for (Offset k = rp[i]; k < diag_[i]; ++k) sum -= static_cast<C>(va[k]) * static_cast<C>(r[ci[k]]);
    r[i] = static_cast<TR>(sum);
  }
  // U r = y
  for (std::size_t ii = n; ii-- > 0;) {
    C sum = static_cast<C>(r[ii]);
    const Offset d = diag_[ii];
    for (Offset k = d + 1; k < rp[ii + 1]; ++k) sum -= static_cast<C>(va[k]) * static_cast<C>(r[ci[k]]);
    r[ii] = static_cast<TR>(sum / static_cast<C>(va[d]));
  }
}

extern template class Ilu0<float>;
extern template class Ilu0<double>;

}  // namespace mpgmres
