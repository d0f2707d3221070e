#pragma once

#include <cstdint>
#include <vector>

#include "mpgmres/csr_matrix.hpp"

namespace mpgmres {

/// 5-point upwind convection-diffusion operator on a k x k interior grid with
/// homogeneous Dirichlet boundaries, n = k^2, natural (row-by-row) ordering.
///
/// Discretizes -laplace(u) + beta * (u_x + u_y) on the unit square with mesh
/// width h = 1/(k+1), first-order upwind convection, scaled by h^2. Row
/// stencil: centre 4 + 2*beta*h, west and south -(1 + beta*h), east and
/// north -1. beta = 0 is the 2D Poisson matrix.
CsrMatrix<double> gen_convdiff2d(int k, double beta);

/// tridiag(-1, 2, -1) of order n.
CsrMatrix<double> gen_laplace1d(int n);

/// Solution vector with entries drawn independently from U(0, 1).
std::vector<double> random_solution(std::size_t n, std::uint64_t seed);

}  // namespace mpgmres
