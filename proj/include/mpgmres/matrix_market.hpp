#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mpgmres/csr_matrix.hpp"

namespace mpgmres {

/// Reads a "matrix coordinate real|integer general|symmetric" file.
/// Symmetric storage is expanded, duplicate entries are summed and rows are
/// sorted. Anything else (array, pattern, complex, skew-symmetric, hermitian,
/// bad indices, short files) throws ParseError carrying the line number.
CsrMatrix<double> read_matrix_market(const std::filesystem::path& path);
CsrMatrix<double> read_matrix_market(std::istream& in);

/// Writes "coordinate real general" with 17 significant digits.
void write_matrix_market(const std::filesystem::path& path, const CsrMatrix<double>& A);
void write_matrix_market(std::ostream& out, const CsrMatrix<double>& A);

}  // namespace mpgmres
