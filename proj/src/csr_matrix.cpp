#include "mpgmres/csr_matrix.hpp"

#include <algorithm>
#include <string>

namespace mpgmres {

void SparsityPattern::validate() const {
  if (n_rows < 0 || n_cols < 0) throw DimensionError("negative matrix dimension");
  if (row_ptr.size() != static_cast<std::size_t>(n_rows) + 1) {
    throw DimensionError("row_ptr must have n_rows + 1 entries");
  }
  if (row_ptr.front() != 0) throw DimensionError("row_ptr[0] must be 0");
  if (row_ptr.back() != static_cast<Offset>(col_idx.size())) throw DimensionError("row_ptr[n_rows] must equal nnz");
  for (Index i = 0; i < n_rows; ++i) {
    const Offset lo = row_ptr[i];
    const Offset hi = row_ptr[i + 1];
    if (hi < lo) throw DimensionError("row_ptr decreases at row " + std::to_string(i));
    for (Offset k = lo; k < hi; ++k) {
      const Index c = col_idx[k];
      if (c < 0 || c >= n_cols) throw DimensionError("column index out of range in row " + std::to_string(i));
      if (k > lo && col_idx[k - 1] >= c) {
        throw DimensionError("columns not strictly increasing in row " + std::to_string(i));
      }
    }
  }
}

Offset SparsityPattern::find(Index row, Index col) const noexcept {
  if (row < 0 || row >= n_rows) return -1;
  const auto first = col_idx.begin() + row_ptr[row];
  const auto last = col_idx.begin() + row_ptr[row + 1];
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return -1;
  return static_cast<Offset>(it - col_idx.begin());
}

template <Real T>
CsrMatrix<T> CsrMatrix<T>::from_triplets(Index n_rows, Index n_cols, std::vector<Triplet<T>> entries) {
  if (n_rows < 0 || n_cols < 0) throw DimensionError("negative matrix dimension");
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols) {
      throw DimensionError("triplet (" + std::to_string(e.row) + ", " + std::to_string(e.col) + ") out of range");
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Triplet<T>& a, const Triplet<T>& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  auto pattern = std::make_shared<SparsityPattern>();
  pattern->n_rows = n_rows;
  pattern->n_cols = n_cols;
  pattern->row_ptr.assign(static_cast<std::size_t>(n_rows) + 1, 0);
  std::vector<T> values;
  values.reserve(entries.size());
  pattern->col_idx.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      values.back() += e.value;
      continue;
    }
    pattern->col_idx.push_back(e.col);
    values.push_back(e.value);
    ++pattern->row_ptr[static_cast<std::size_t>(e.row) + 1];
  }
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_rows); ++i) pattern->row_ptr[i + 1] += pattern->row_ptr[i];
  return CsrMatrix(std::move(pattern), std::move(values));
}

template <Real T>
CsrMatrix<T> CsrMatrix<T>::from_dense(Index n_rows, Index n_cols, std::span<const T> row_major, bool keep_zeros) {
  require_same_size(row_major.size(), static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols),
                    "dense matrix");
  std::vector<Triplet<T>> entries;
  for (Index i = 0; i < n_rows; ++i) {
    for (Index j = 0; j < n_cols; ++j) {
      const T v = row_major[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_cols) + static_cast<std::size_t>(j)];
      if (keep_zeros || v != T(0)) entries.push_back({i, j, v});
    }
  }
  return from_triplets(n_rows, n_cols, std::move(entries));
}

template <Real T>
CsrMatrix<T> CsrMatrix<T>::identity(Index n) {
  std::vector<Triplet<T>> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) entries.push_back({i, i, T(1)});
  return from_triplets(n, n, std::move(entries));
}

template <Real T>
std::vector<T> CsrMatrix<T>::to_dense() const {
  const auto nc = static_cast<std::size_t>(n_cols());
  std::vector<T> out(static_cast<std::size_t>(n_rows()) * nc, T(0));
  const auto rp = row_ptr();
  const auto ci = col_idx();
  for (Index i = 0; i < n_rows(); ++i) {
    for (Offset k = rp[i]; k < rp[i + 1]; ++k) out[static_cast<std::size_t>(i) * nc + static_cast<std::size_t>(ci[k])] = values_[k];
  }
  return out;
}

template <Real T>
double CsrMatrix<T>::inf_norm() const noexcept {
  double best = 0.0;
  const auto rp = row_ptr();
  for (Index i = 0; i < n_rows(); ++i) {
    double sum = 0.0;
    for (Offset k = rp[i]; k < rp[i + 1]; ++k) sum += std::abs(static_cast<double>(values_[k]));
    best = std::max(best, sum);
  }
  return best;
}

template <Real T>
CsrMatrix<T> CsrMatrix<T>::transposed() const {
  std::vector<Triplet<T>> entries;
  entries.reserve(nnz());
  const auto rp = row_ptr();
  const auto ci = col_idx();
  for (Index i = 0; i < n_rows(); ++i) {
    for (Offset k = rp[i]; k < rp[i + 1]; ++k) entries.push_back({ci[k], i, values_[k]});
  }
  return from_triplets(n_cols(), n_rows(), std::move(entries));
}

template class CsrMatrix<float>;
template class CsrMatrix<double>;

}  // namespace mpgmres
