#pragma once

#include <span>
#include <vector>

#include "mpgmres/basis.hpp"
#include "mpgmres/vector_ops.hpp"

namespace mpgmres {

/// Incremental S_k = (I + U_k)^{-1} U_k where U_k is the strictly upper part
/// of V_k^T V_k. ||S_k||_2 = 1 exactly when the columns of V_k are linearly
/// dependent.
///
/// Each appended column costs k dot products of length n (2nk flops) plus a
/// unit upper-triangular solve with U_k (k^2 flops).
class SMatrixMonitor {
 public:
  SMatrixMonitor() = default;
  explicit SMatrixMonitor(std::size_t capacity) { reserve(capacity); }

  void reserve(std::size_t capacity);
  void reset() noexcept;

  std::size_t size() const noexcept { return k_; }

  /// Appends column `k` of V (the monitor must already hold columns
  /// 0..k-1). Dot products are taken in T.
  template <Real T>
  void append(const Basis<T>& V, std::size_t k) {
    std::vector<double> u(k);
    const auto v = V.column(k);
    for (std::size_t i = 0; i < k; ++i) u[i] = static_cast<double>(dot_as<T>(V.column(i), v));
    append_column(u);
  }

  /// Appends a column given u = V_k^T v_new directly.
  void append_column(std::span<const double> u);

  double s(std::size_t row, std::size_t col) const noexcept { return s_[col][row]; }
  double u(std::size_t row, std::size_t col) const noexcept { return u_[col][row]; }

  /// Power iteration on S^T S from the normalized all-ones vector; returns
  /// ||S x|| for the final iterate. Zero for an empty or zero S.
  double spectral_norm(int power_iterations) const;

  double frobenius_norm() const noexcept;

  /// Dense k x k copy of S (row-major), for inspection.
  std::vector<double> dense_s() const;

 private:
  std::size_t k_ = 0;
  // Column c holds rows 0..c-1 (strictly upper).
  std::vector<std::vector<double>> u_;
  std::vector<std::vector<double>> s_;
  double frob_sq_ = 0.0;
};

}  // namespace mpgmres
