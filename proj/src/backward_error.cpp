#include "mpgmres/backward_error.hpp"

#include "mpgmres/spmv.hpp"
#include "mpgmres/vector_ops.hpp"

namespace mpgmres {

void residual_into(const CsrMatrix<double>& A, std::span<const double> x, std::span<const double> b,
                   std::span<double> z) {
  require_same_size(b.size(), static_cast<std::size_t>(A.n_rows()), "residual rhs");
  spmv_as<double>(A, x, z);
  subtract_from_as<double>(b, z);
}

double backward_error_from_residual(std::span<const double> z, double a_frobenius, std::span<const double> x,
                                    std::span<const double> b) {
  const double denom = a_frobenius * norm2_as<double>(x) + norm2_as<double>(b);
  if (!(denom > 0.0)) throw NumericalError("backward error undefined: ||A|| ||x|| + ||b|| is zero");
  return norm2_as<double>(z) / denom;
}

double backward_error(const CsrMatrix<double>& A, std::span<const double> x, std::span<const double> b) {
  std::vector<double> z(static_cast<std::size_t>(A.n_rows()));
  residual_into(A, x, b, std::span<double>(z));
  return backward_error_from_residual(std::span<const double>(z), A.frobenius_norm(), x, b);
}

}  // namespace mpgmres
