#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "mpgmres/errors.hpp"
#include "mpgmres/precision.hpp"

namespace mpgmres {

using Index = std::int32_t;
using Offset = std::int64_t;

/// Row offsets and column indices of a CSR matrix. Shared between the HIGH
/// matrix, its LOW copy and the ILU(0) factors, which all live on the same
/// pattern.
struct SparsityPattern {
  Index n_rows = 0;
  Index n_cols = 0;
  std::vector<Offset> row_ptr{0};
  std::vector<Index> col_idx;

  std::size_t nnz() const noexcept { return col_idx.size(); }

  /// Throws DimensionError when the CSR invariants do not hold: row_ptr
  /// non-decreasing from 0 to nnz, sorted unique columns per row, columns in
  /// range.
  void validate() const;

  /// Position of (row, col) in col_idx, or -1.
  Offset find(Index row, Index col) const noexcept;
};

template <Real T>
struct Triplet {
  Index row;
  Index col;
  T value;
};

template <Real T>
class CsrMatrix {
 public:
  using value_type = T;

  CsrMatrix() : pattern_(std::make_shared<SparsityPattern>()) {}

  CsrMatrix(std::shared_ptr<const SparsityPattern> pattern, std::vector<T> values)
      : pattern_(std::move(pattern)), values_(std::move(values)) {
    if (!pattern_) throw DimensionError("CsrMatrix: null pattern");
    pattern_->validate();
    require_same_size(values_.size(), pattern_->nnz(), "CsrMatrix values");
  }

  /// Builds canonical CSR from unordered triplets; duplicates are summed.
  static CsrMatrix from_triplets(Index n_rows, Index n_cols, std::vector<Triplet<T>> entries);

  /// Row-major dense input; exact zeros are dropped unless keep_zeros.
  static CsrMatrix from_dense(Index n_rows, Index n_cols, std::span<const T> row_major,
                              bool keep_zeros = false);

  static CsrMatrix identity(Index n);

  Index n_rows() const noexcept { return pattern_->n_rows; }
  Index n_cols() const noexcept { return pattern_->n_cols; }
  std::size_t nnz() const noexcept { return pattern_->nnz(); }

  std::span<const Offset> row_ptr() const noexcept { return pattern_->row_ptr; }
  std::span<const Index> col_idx() const noexcept { return pattern_->col_idx; }
  std::span<const T> values() const noexcept { return values_; }
  std::span<T> values() noexcept { return values_; }

  const std::shared_ptr<const SparsityPattern>& pattern() const noexcept { return pattern_; }

  /// Entry (row, col); zero when outside the pattern.
  T at(Index row, Index col) const noexcept {
    const Offset k = pattern_->find(row, col);
    return k < 0 ? T(0) : values_[static_cast<std::size_t>(k)];
  }

  std::vector<T> to_dense() const;

  double frobenius_norm() const noexcept {
    double sum = 0.0;
    for (T v : values_) sum += static_cast<double>(v) * static_cast<double>(v);
    return std::sqrt(sum);
  }

  double inf_norm() const noexcept;

  CsrMatrix scaled(T factor) const {
    std::vector<T> v(values_);
    for (T& x : v) x *= factor;
    return CsrMatrix(pattern_, std::move(v));
  }

  CsrMatrix transposed() const;

  bool is_square() const noexcept { return n_rows() == n_cols(); }

 private:
  std::shared_ptr<const SparsityPattern> pattern_;
  std::vector<T> values_;
};

extern template class CsrMatrix<float>;
extern template class CsrMatrix<double>;

}  // namespace mpgmres
