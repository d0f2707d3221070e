#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mpgmres/csr_matrix.hpp"

namespace mpgmres {

namespace detail {

template <Real To, Real From>
To checked_cast(From v, std::size_t position) {
  const To out = static_cast<To>(v);
  if constexpr (sizeof(To) < sizeof(From)) {
    if (std::isfinite(v) && !std::isfinite(out)) {
      throw PrecisionOverflowError("value " + std::to_string(v) + " at position " +
                                   std::to_string(position) + " overflows single precision");
    }
  }
  return out;
}

}  // namespace detail

/// Round-to-nearest downcast or exact upcast. Finite values that overflow the
/// target range throw PrecisionOverflowError.
template <Real To, Real From>
std::vector<To> convert_precision(std::span<const From> x) {
  std::vector<To> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = detail::checked_cast<To>(x[i], i);
  return out;
}

template <Real To, Real From>
std::vector<To> convert_precision(const std::vector<From>& x) {
  return convert_precision<To>(std::span<const From>(x));
}

/// The converted matrix shares the sparsity pattern of the input.
template <Real To, Real From>
CsrMatrix<To> convert_precision(const CsrMatrix<From>& A) {
  return CsrMatrix<To>(A.pattern(), convert_precision<To>(A.values()));
}

/// Values rounded to `p` but kept in binary64 storage (same pattern).
inline CsrMatrix<double> round_values(const CsrMatrix<double>& A, Precision p) {
  if (p == Precision::high) return A;
  std::vector<double> v(A.nnz());
  const auto src = A.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(detail::checked_cast<float>(src[i], i));
  return CsrMatrix<double>(A.pattern(), std::move(v));
}

inline std::vector<double> round_values(std::span<const double> x, Precision p) {
  std::vector<double> out(x.begin(), x.end());
  if (p == Precision::low) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(detail::checked_cast<float>(out[i], i));
  }
  return out;
}

}  // namespace mpgmres
