#pragma once

#include <cstdint>
#include <string_view>

namespace mpgmres {

enum class SolverMode { double_precision, mixed };

/// Leading-order working-set size of ILU(0)-preconditioned GMRES(m) over CSR:
///   double: 24 nnz + 8 n m + 28 n + 8 m^2
///   mixed:  24 nnz + 4 n m + 32 n + 4 m^2
/// The O(m) remainder is not included.
constexpr std::uint64_t estimate_bytes(std::uint64_t n, std::uint64_t nnz, std::uint64_t m, SolverMode mode) {
  if (mode == SolverMode::double_precision) {
    return 24 * nnz + 8 * n * m + 28 * n + 8 * m * m;
  }
  return 24 * nnz + 4 * n * m + 32 * n + 4 * m * m;
}

SolverMode parse_solver_mode(std::string_view text);

}  // namespace mpgmres
