#pragma once

#include <span>
#include <vector>

#include "mpgmres/csr_matrix.hpp"

namespace mpgmres {

/// z <- b - A*x in binary64.
void residual_into(const CsrMatrix<double>& A, std::span<const double> x, std::span<const double> b,
                   std::span<double> z);

/// Normwise backward error ||b - Ax||_2 / (||A||_F ||x||_2 + ||b||_2).
/// Throws NumericalError when the denominator vanishes.
double backward_error(const CsrMatrix<double>& A, std::span<const double> x, std::span<const double> b);

/// Same quantity from an already computed residual z = b - A*x.
double backward_error_from_residual(std::span<const double> z, double a_frobenius, std::span<const double> x,
                                    std::span<const double> b);

inline double backward_error(const CsrMatrix<double>& A, const std::vector<double>& x,
                             const std::vector<double>& b) {
  return backward_error(A, std::span<const double>(x), std::span<const double>(b));
}

}  // namespace mpgmres
