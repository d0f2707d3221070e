#pragma once

// Level-1 kernels. The `*_as<C>` forms take the arithmetic type C explicitly
// and accept operands stored in any width: inputs are converted to C, the
// operation is carried out in C, and results are converted to the output's
// storage type. The plain forms are the uniform-precision case.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "mpgmres/errors.hpp"
#include "mpgmres/parallel.hpp"
#include "mpgmres/precision.hpp"

namespace mpgmres {

template <Real C, Real TX, Real TY>
C dot_as(std::span<const TX> x, std::span<const TY> y) {
  require_same_size(x.size(), y.size(), "dot");
  const std::size_t n = x.size();
  const std::size_t n_blocks = (n + kReductionBlock - 1) / kReductionBlock;
  if (n_blocks <= 1) {
    C sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += static_cast<C>(x[i]) * static_cast<C>(y[i]);
    return sum;
  }
  std::vector<C> partial(n_blocks, C(0));
  const auto nb = static_cast<std::ptrdiff_t>(n_blocks);
#pragma omp parallel for schedule(static) if (n_blocks >= 8)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    C sum = 0;
    for (std::size_t i = lo; i < hi; ++i) sum += static_cast<C>(x[i]) * static_cast<C>(y[i]);
    partial[static_cast<std::size_t>(b)] = sum;
  }
  C sum = 0;
  for (C p : partial) sum += p;
  return sum;
}

template <Real C, Real TX>
C norm2_as(std::span<const TX> x) {
  return std::sqrt(dot_as<C>(x, x));
}

/// y <- y + a*x
template <Real C, Real TX, Real TY>
void axpy_as(C a, std::span<const TX> x, std::span<TY> y) {
  require_same_size(x.size(), y.size(), "axpy");
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n > 65536)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    y[i] = static_cast<TY>(static_cast<C>(y[i]) + a * static_cast<C>(x[i]));
  }
}

/// y <- x / d
template <Real C, Real TX, Real TY>
void divide_as(std::span<const TX> x, C d, std::span<TY> y) {
  require_same_size(x.size(), y.size(), "divide");
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n > 65536)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = static_cast<TY>(static_cast<C>(x[i]) / d);
}

/// z <- b - z
template <Real C, Real TB, Real TZ>
void subtract_from_as(std::span<const TB> b, std::span<TZ> z) {
  require_same_size(b.size(), z.size(), "subtract");
  const auto n = static_cast<std::ptrdiff_t>(b.size());
#pragma omp parallel for schedule(static) if (n > 65536)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    z[i] = static_cast<TZ>(static_cast<C>(b[i]) - static_cast<C>(z[i]));
  }
}

/// Element-wise width change without range checks (hot-path boundary cast).
template <Real TX, Real TY>
void cast_into(std::span<const TX> x, std::span<TY> y) {
  require_same_size(x.size(), y.size(), "cast");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = static_cast<TY>(x[i]);
}

// Uniform-precision conveniences.

template <Real T>
T dot(std::span<const T> x, std::span<const T> y) {
  return dot_as<T>(x, y);
}

template <Real T>
T norm2(std::span<const T> x) {
  return norm2_as<T>(x);
}

template <Real T>
std::vector<T> axpy(T a, std::span<const T> x, std::span<const T> y) {
  std::vector<T> out(y.begin(), y.end());
  axpy_as<T>(a, x, std::span<T>(out));
  return out;
}

template <Real T>
std::vector<T> scale(T a, std::span<const T> x) {
  std::vector<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i];
  return out;
}

// Overloads so that std::vector arguments deduce cleanly.
template <Real T>
T dot(const std::vector<T>& x, const std::vector<T>& y) {
  return dot<T>(std::span<const T>(x), std::span<const T>(y));
}
template <Real T>
T norm2(const std::vector<T>& x) {
  return norm2<T>(std::span<const T>(x));
}
template <Real T>
std::vector<T> axpy(T a, const std::vector<T>& x, const std::vector<T>& y) {
  return axpy<T>(a, std::span<const T>(x), std::span<const T>(y));
}
template <Real T>
std::vector<T> scale(T a, const std::vector<T>& x) {
  return scale<T>(a, std::span<const T>(x));
}

}  // namespace mpgmres
