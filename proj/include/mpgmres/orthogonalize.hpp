#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "mpgmres/basis.hpp"
#include "mpgmres/vector_ops.hpp"

namespace mpgmres {

/// mgs: modified Gram-Schmidt. cgsr: classical Gram-Schmidt with one
/// re-orthogonalization pass. cgs: single-pass classical Gram-Schmidt (kept
/// for comparison only).
enum class OrthScheme { mgs, cgsr, cgs };

std::string_view to_string(OrthScheme s) noexcept;
OrthScheme parse_orth_scheme(std::string_view text);

// Coefficients are computed in CH, vector updates in CW. The first `j`
// columns of V are used; h must hold at least j entries.

template <Real CH, Real CW, Real TW, Real TV, Real TH>
void orthogonalize_mgs_as(std::span<TW> w, const Basis<TV>& V, std::size_t j, std::span<TH> h) {
  for (std::size_t i = 0; i < j; ++i) {
    const auto v = V.column(i);
    h[i] = static_cast<TH>(dot_as<CH>(std::span<const TW>(w), v));
    axpy_as<CW>(-static_cast<CW>(h[i]), v, w);
  }
}

/// One classical pass: t = V^T w, then w <- w - V t.
template <Real CH, Real CW, Real TW, Real TV, Real TH>
void cgs_pass_as(std::span<TW> w, const Basis<TV>& V, std::size_t j, std::span<TH> t) {
  for (std::size_t i = 0; i < j; ++i) t[i] = static_cast<TH>(dot_as<CH>(std::span<const TW>(w), V.column(i)));
  for (std::size_t i = 0; i < j; ++i) axpy_as<CW>(-static_cast<CW>(t[i]), V.column(i), w);
}

template <Real CH, Real CW, Real TW, Real TV, Real TH>
void orthogonalize_cgs_as(std::span<TW> w, const Basis<TV>& V, std::size_t j, std::span<TH> h) {
  cgs_pass_as<CH, CW>(w, V, j, h);
}

template <Real CH, Real CW, Real TW, Real TV, Real TH>
void orthogonalize_cgsr_as(std::span<TW> w, const Basis<TV>& V, std::size_t j, std::span<TH> h) {
  cgs_pass_as<CH, CW>(w, V, j, h);
  std::vector<TH> second(j);
  cgs_pass_as<CH, CW>(w, V, j, std::span<TH>(second));
  for (std::size_t i = 0; i < j; ++i) h[i] = static_cast<TH>(static_cast<CH>(h[i]) + static_cast<CH>(second[i]));
}

template <Real CH, Real CW, Real TW, Real TV, Real TH>
void orthogonalize_as(OrthScheme scheme, std::span<TW> w, const Basis<TV>& V, std::size_t j, std::span<TH> h) {
  switch (scheme) {
    case OrthScheme::mgs: orthogonalize_mgs_as<CH, CW>(w, V, j, h); break;
    case OrthScheme::cgsr: orthogonalize_cgsr_as<CH, CW>(w, V, j, h); break;
    case OrthScheme::cgs: orthogonalize_cgs_as<CH, CW>(w, V, j, h); break;
  }
}

// Uniform-precision forms against all columns of V. Return the coefficients.

template <Real T>
std::vector<T> orthogonalize_mgs(std::span<T> w, const Basis<T>& V) {
  std::vector<T> h(V.size());
  orthogonalize_mgs_as<T, T>(w, V, V.size(), std::span<T>(h));
  return h;
}

template <Real T>
std::vector<T> orthogonalize_cgsr(std::span<T> w, const Basis<T>& V) {
  std::vector<T> h(V.size());
  orthogonalize_cgsr_as<T, T>(w, V, V.size(), std::span<T>(h));
  return h;
}

template <Real T>
std::vector<T> orthogonalize_cgs(std::span<T> w, const Basis<T>& V) {
  std::vector<T> h(V.size());
  orthogonalize_cgs_as<T, T>(w, V, V.size(), std::span<T>(h));
  return h;
}

template <Real T>
std::vector<T> orthogonalize(OrthScheme scheme, std::span<T> w, const Basis<T>& V) {
  std::vector<T> h(V.size());
  orthogonalize_as<T, T>(scheme, w, V, V.size(), std::span<T>(h));
  return h;
}

}  // namespace mpgmres
