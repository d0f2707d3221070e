#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "mpgmres/errors.hpp"
#include "mpgmres/precision.hpp"

namespace mpgmres {

/// Plane rotation [[alpha, beta], [-beta, alpha]].
template <Real T>
struct GivensRotation {
  T alpha = 1;
  T beta = 0;

  /// Applies the rotation to (a, b) in place.
  void apply(T& a, T& b) const noexcept {
    const T ra = alpha * a + beta * b;
    const T rb = -beta * a + alpha * b;
    a = ra;
    b = rb;
  }
};

/// Rotation mapping (a, b) to (hypot(a, b), 0). Scales by max(|a|, |b|) to
/// avoid overflow and underflow. Throws NumericalError for (0, 0).
template <Real T>
GivensRotation<T> form_givens(T a, T b) {
  if (b == T(0)) {
    if (a == T(0)) throw NumericalError("Givens rotation of a zero vector");
    return {a > T(0) ? T(1) : T(-1), T(0)};
  }
  const T scale = std::max(std::abs(a), std::abs(b));
  const T as = a / scale;
  const T bs = b / scale;
  const T rho = std::sqrt(as * as + bs * bs);
  return {as / rho, bs / rho};
}

/// The rotated Hessenberg least-squares problem of one GMRES cycle: the upper
/// triangular R (rotated h columns), the rotations, and the transformed
/// right-hand side s. |s[j]| after j columns is the Arnoldi residual norm.
template <Real T>
class HessenbergLeastSquares {
 public:
  using value_type = T;

  explicit HessenbergLeastSquares(std::size_t capacity = 0)
      : capacity_(capacity), r_(capacity * capacity), rotations_(capacity), s_(capacity + 1) {}

  void reset(T beta) {
    j_ = 0;
    std::fill(s_.begin(), s_.end(), T(0));
    s_[0] = beta;
  }

  std::size_t columns() const noexcept { return j_; }
  std::size_t capacity() const noexcept { return capacity_; }

  /// Adds column j (0-based) of the Hessenberg matrix, given as h[0..j+1]
  /// with h[j+1] the subdiagonal entry. Returns the new |s[j+1]|.
  T add_column(std::span<const T> h) {
    if (j_ >= capacity_) throw DimensionError("least-squares capacity exceeded");
    require_same_size(h.size(), j_ + 2, "Hessenberg column");
    T* col = r_.data() + j_ * capacity_;
    for (std::size_t i = 0; i <= j_; ++i) col[i] = h[i];
    T sub = h[j_ + 1];
    for (std::size_t i = 0; i < j_; ++i) rotations_[i].apply(col[i], col[i + 1]);
    const GivensRotation<T> g = form_givens(col[j_], sub);
    rotations_[j_] = g;
    g.apply(col[j_], sub);
    T s_next = T(0);
    g.apply(s_[j_], s_next);
    s_[j_ + 1] = s_next;
    ++j_;
    return std::abs(s_next);
  }

  T residual_norm() const noexcept { return std::abs(s_[j_]); }

  /// Back-substitution R y = s[0..k) using the leading k columns (k <= j).
  void solve(std::size_t k, std::span<T> y) const {
    if (k > j_) throw DimensionError("least-squares solve beyond current size");
    for (std::size_t ii = k; ii-- > 0;) {
      T sum = s_[ii];
      for (std::size_t c = ii + 1; c < k; ++c) sum -= r(ii, c) * y[c];
      const T d = r(ii, ii);
      if (d == T(0)) throw NumericalError("singular triangular factor in correction");
      y[ii] = sum / d;
    }
  }

  T r(std::size_t row, std::size_t col) const noexcept { return r_[col * capacity_ + row]; }
  std::span<const T> s() const noexcept { return {s_.data(), j_ + 1}; }
  const GivensRotation<T>& rotation(std::size_t i) const noexcept { return rotations_[i]; }

 private:
  std::size_t capacity_;
  std::size_t j_ = 0;
  std::vector<T> r_;  // column-major, capacity x capacity
  std::vector<GivensRotation<T>> rotations_;
  std::vector<T> s_;
};

}  // namespace mpgmres
