#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace mpgmres {

/// Storage/arithmetic width of a variable. `low` is IEEE binary32, `high` is
/// IEEE binary64.
enum class Precision : std::uint8_t { low, high };

template <typename T>
concept Real = std::same_as<T, float> || std::same_as<T, double>;

template <Precision P>
using scalar_t = std::conditional_t<P == Precision::high, double, float>;

template <Real T>
inline constexpr Precision precision_of = std::same_as<T, double> ? Precision::high : Precision::low;

/// Round a binary64 value to the given width (round-to-nearest for `low`).
/// The result is still held in a double, but is exactly representable in the
/// requested width.
inline double round_to(Precision p, double v) noexcept {
  return p == Precision::low ? static_cast<double>(static_cast<float>(v)) : v;
}

inline constexpr Precision wider(Precision a, Precision b) noexcept {
  return (a == Precision::high || b == Precision::high) ? Precision::high : Precision::low;
}

std::string_view to_string(Precision p) noexcept;

/// Accepts "low"/"single"/"float"/"fp32" and "high"/"double"/"fp64".
Precision parse_precision(std::string_view text);

}  // namespace mpgmres
