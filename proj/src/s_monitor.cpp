#include "mpgmres/s_monitor.hpp"

#include <cmath>

namespace mpgmres {

void SMatrixMonitor::reserve(std::size_t capacity) {
  u_.reserve(capacity);
  s_.reserve(capacity);
}

void SMatrixMonitor::reset() noexcept {
  k_ = 0;
  u_.clear();
  s_.clear();
  frob_sq_ = 0.0;
}

// With U_{k+1} = [U_k u; 0 0], the inverse of I + U_{k+1} is block upper
// triangular, so S_{k+1} = [S_k (I+U_k)^{-1} u; 0 0] and earlier columns stay.
void SMatrixMonitor::append_column(std::span<const double> u) {
  require_same_size(u.size(), k_, "S-monitor column");
  std::vector<double> s(u.begin(), u.end());
  for (std::size_t i = k_; i-- > 0;) {
    double sum = s[i];
    for (std::size_t c = i + 1; c < k_; ++c) sum -= u_[c][i] * s[c];
    s[i] = sum;
  }
  for (double v : s) frob_sq_ += v * v;
  u_.emplace_back(u.begin(), u.end());
  s_.push_back(std::move(s));
  ++k_;
}

double SMatrixMonitor::spectral_norm(int power_iterations) const {
  if (k_ == 0) return 0.0;
  std::vector<double> x(k_, 1.0 / std::sqrt(static_cast<double>(k_)));
  std::vector<double> y(k_);
  auto apply_s = [&](const std::vector<double>& in, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t c = 1; c < k_; ++c) {
      for (std::size_t r = 0; r < c; ++r) out[r] += s_[c][r] * in[c];
    }
  };
  auto norm = [](const std::vector<double>& v) {
    double sq = 0.0;
    for (double e : v) sq += e * e;
    return std::sqrt(sq);
  };
  for (int it = 0; it < power_iterations; ++it) {
    apply_s(x, y);
    // x <- S^T y
    for (std::size_t c = 0; c < k_; ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r < c; ++r) sum += s_[c][r] * y[r];
      x[c] = sum;
    }
    const double nx = norm(x);
    if (nx == 0.0) return 0.0;
    for (double& e : x) e /= nx;
  }
  apply_s(x, y);
  return norm(y);
}

double SMatrixMonitor::frobenius_norm() const noexcept { return std::sqrt(frob_sq_); }

std::vector<double> SMatrixMonitor::dense_s() const {
  std::vector<double> out(k_ * k_, 0.0);
  for (std::size_t c = 0; c < k_; ++c) {
    for (std::size_t r = 0; r < c; ++r) out[r * k_ + c] = s_[c][r];
  }
  return out;
}

}  // namespace mpgmres
