#pragma once

#include <span>
#include <vector>

#include "mpgmres/errors.hpp"
#include "mpgmres/precision.hpp"

namespace mpgmres {

/// Krylov basis V: up to `capacity` columns of length n, stored
/// column-major in one contiguous buffer.
template <Real T>
class Basis {
 public:
  Basis() = default;
  Basis(std::size_t n, std::size_t capacity) : n_(n), capacity_(capacity), data_(n * capacity) {}

  std::size_t rows() const noexcept { return n_; }
  std::size_t size() const noexcept { return count_; }
  std::size_t capacity() const noexcept { return capacity_; }

  std::span<T> column(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const T> column(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

  /// Storage slot for the next column; call push() once it is filled.
  std::span<T> next_column() {
    if (count_ >= capacity_) throw DimensionError("basis capacity exceeded");
    return column(count_);
  }
  void push() {
    if (count_ >= capacity_) throw DimensionError("basis capacity exceeded");
    ++count_;
  }
  void push_back(std::span<const T> v) {
    require_same_size(v.size(), n_, "basis column");
    auto dst = next_column();
    for (std::size_t i = 0; i < n_; ++i) dst[i] = v[i];
    push();
  }
  void clear() noexcept { count_ = 0; }

  std::size_t bytes() const noexcept { return data_.size() * sizeof(T); }

 private:
  std::size_t n_ = 0;
  std::size_t capacity_ = 0;
  std::size_t count_ = 0;
  std::vector<T> data_;
};

}  // namespace mpgmres
