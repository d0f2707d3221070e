#include "mpgmres/generators.hpp"

#include <random>
#include <string>

namespace mpgmres {

CsrMatrix<double> gen_convdiff2d(int k, double beta) {
  if (k < 2) throw ConfigError("gen_convdiff2d: grid size must be at least 2, got " + std::to_string(k));
  const Index n = static_cast<Index>(k) * static_cast<Index>(k);
  const double bh = beta / static_cast<double>(k + 1);
  const double centre = 4.0 + 2.0 * bh;
  const double upwind = -(1.0 + bh);
  std::vector<Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(5 * n));
  for (int iy = 0; iy < k; ++iy) {
    for (int ix = 0; ix < k; ++ix) {
      const Index row = static_cast<Index>(iy * k + ix);
      if (iy > 0) entries.push_back({row, row - k, upwind});
      if (ix > 0) entries.push_back({row, row - 1, upwind});
      entries.push_back({row, row, centre});
      if (ix + 1 < k) entries.push_back({row, row + 1, -1.0});
      if (iy + 1 < k) entries.push_back({row, row + k, -1.0});
    }
  }
  return CsrMatrix<double>::from_triplets(n, n, std::move(entries));
}

CsrMatrix<double> gen_laplace1d(int n) {
  if (n < 1) throw ConfigError("gen_laplace1d: order must be positive");
  std::vector<Triplet<double>> entries;
  for (Index i = 0; i < n; ++i) {
    if (i > 0) entries.push_back({i, i - 1, -1.0});
    entries.push_back({i, i, 2.0});
    if (i + 1 < n) entries.push_back({i, i + 1, -1.0});
  }
  return CsrMatrix<double>::from_triplets(n, n, std::move(entries));
}

std::vector<double> random_solution(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = dist(rng);
  return x;
}

}  // namespace mpgmres
