#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "mpgmres/basis.hpp"
#include "mpgmres/givens.hpp"
#include "mpgmres/ilu0.hpp"
#include "mpgmres/orthogonalize.hpp"
#include "mpgmres/spmv.hpp"
#include "mpgmres/vector_ops.hpp"

namespace mpgmres {

/// Outcome of one Arnoldi step: the new Hessenberg column h[0..j+1]
/// (h[j+1] = ||w|| after orthogonalization) and whether it broke down.
template <Real T>
struct ArnoldiStep {
  std::span<const T> h;
  bool breakdown = false;
};

/// State of one GMRES cycle in a single precision T: basis, rotated
/// Hessenberg least-squares problem, and the cycle scalars.
template <Real T>
class KrylovState {
 public:
  KrylovState(std::size_t n, std::size_t m) : V_(n, m + 1), ls_(m), w_(n), t_(n), h_(m + 2) {}

  std::size_t n() const noexcept { return V_.rows(); }
  std::size_t m() const noexcept { return ls_.capacity(); }
  std::size_t j() const noexcept { return ls_.columns(); }
  T beta() const noexcept { return beta_; }
  const Basis<T>& basis() const noexcept { return V_; }
  const HessenbergLeastSquares<T>& least_squares() const noexcept { return ls_; }

  /// Slot for r before begin(): callers may write M^{-1} z straight into it.
  std::span<T> first_column() noexcept {
    V_.clear();
    return V_.next_column();
  }

  /// beta <- ||r||, v_1 <- r / beta, s_0 <- beta, where r was written into
  /// first_column(). Returns beta; a zero residual leaves the basis empty.
  T begin() {
    auto r = V_.next_column();
    beta_ = norm2_as<T>(std::span<const T>(r));
    ls_.reset(beta_);
    if (beta_ == T(0)) return beta_;
    divide_as<T>(std::span<const T>(r), beta_, r);
    V_.push();
    return beta_;
  }

  T begin(std::span<const T> r) {
    auto slot = first_column();
    for (std::size_t i = 0; i < r.size(); ++i) slot[i] = r[i];
    return begin();
  }

  /// w <- M^{-1} A v_j, orthogonalized against V_j; appends v_{j+1} unless
  /// h_{j+1,j} <= breakdown_factor * eps * ||M^{-1} A v_j||. The
  /// preconditioner solve runs in the width of its factors.
  template <Real TM = T>
  ArnoldiStep<T> arnoldi_step(const CsrMatrix<T>& A, const Ilu0<TM>* M, OrthScheme orth,
                              double breakdown_factor = 16.0) {
    const std::size_t j = this->j();
    if (j >= m()) throw DimensionError("arnoldi_step: cycle is full");
    const std::span<const T> v = V_.column(j);
    std::span<T> w(w_);
    if (M != nullptr) {
      spmv_as<T>(A, v, std::span<T>(t_));
      M->template apply_as<TM>(std::span<const T>(t_), w);
    } else {
      spmv_as<T>(A, v, w);
    }
    std::span<T> h(h_.data(), j + 2);
    orthogonalize_as<T, T>(orth, w, V_, j + 1, h);
    const T sub = norm2_as<T>(std::span<const T>(w));
    T sq = sub * sub;
    for (std::size_t i = 0; i <= j; ++i) sq += h[i] * h[i];
    const T eps = std::numeric_limits<T>::epsilon();
    const bool breakdown = !(sub > static_cast<T>(breakdown_factor) * eps * std::sqrt(sq));
    if (breakdown) {
      h[j + 1] = T(0);
    } else {
      h[j + 1] = sub;
      divide_as<T>(std::span<const T>(w), sub, V_.next_column());
      V_.push();
    }
    return {std::span<const T>(h), breakdown};
  }

  /// Applies the previous rotations to h, forms the next one, updates s.
  /// Returns |s_{j+1}|, the Arnoldi residual norm.
  T least_squares_update(std::span<const T> h) { return ls_.add_column(h); }

  /// u = V_j R^{-1} s[0..j).
  void compute_correction(std::span<T> u) const { compute_correction(j(), u); }

  void compute_correction(std::size_t k, std::span<T> u) const {
    std::vector<T> y(k);
    ls_.solve(k, std::span<T>(y));
    std::fill(u.begin(), u.end(), T(0));
    for (std::size_t i = 0; i < k; ++i) axpy_as<T>(y[i], V_.column(i), u);
  }

  std::vector<T> compute_correction() const {
    std::vector<T> u(n());
    compute_correction(std::span<T>(u));
    return u;
  }

  std::size_t workspace_bytes() const noexcept {
    return V_.bytes() + (w_.size() + t_.size() + h_.size()) * sizeof(T);
  }
  std::size_t hessenberg_bytes() const noexcept {
    const std::size_t mm = m();
    return (mm * mm + 2 * mm + (mm + 1) + h_.size()) * sizeof(T);
  }

  /// Scratch vector of length n (the spmv temporary), reusable between
  /// cycles.
  std::span<T> scratch() noexcept { return t_; }

 private:
  Basis<T> V_;
  HessenbergLeastSquares<T> ls_;
  std::vector<T> w_;
  std::vector<T> t_;
  std::vector<T> h_;
  T beta_ = 0;
};

}  // namespace mpgmres
