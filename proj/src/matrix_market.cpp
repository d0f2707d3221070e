#include "mpgmres/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace mpgmres {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '%') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

CsrMatrix<double> read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty input");
  ++line_no;

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw ParseError(line_no, "missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw ParseError(line_no, "unsupported object '" + object + "'");
  if (format != "coordinate") throw ParseError(line_no, "unsupported format '" + format + "' (need coordinate)");
  if (field != "real" && field != "integer" && field != "double") {
    throw ParseError(line_no, "unsupported field '" + field + "' (need real)");
  }
  bool symmetric = false;
  if (symmetry == "symmetric") {
    symmetric = true;
  } else if (symmetry != "general") {
    throw ParseError(line_no, "unsupported symmetry '" + symmetry + "'");
  }

  long long rows = -1, cols = -1, declared = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> declared) || rows < 0 || cols < 0 || declared < 0) {
      throw ParseError(line_no, "malformed size line");
    }
    break;
  }
  if (rows < 0) throw ParseError(line_no, "missing size line");
  if (rows > INT32_MAX || cols > INT32_MAX) throw ParseError(line_no, "matrix too large");

  std::vector<Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(symmetric ? 2 * declared : declared));
  long long read = 0;
  while (read < declared && std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream entry(line);
    long long i = 0, j = 0;
    std::string value_text;
    if (!(entry >> i >> j >> value_text)) throw ParseError(line_no, "malformed entry");
    std::string extra;
    if (entry >> extra) throw ParseError(line_no, "unexpected extra field '" + extra + "'");
    double value = 0.0;
    const char* first = value_text.data();
    const char* last = first + value_text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ParseError(line_no, "bad value '" + value_text + "'");
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw ParseError(line_no, "index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
    }
    const auto r = static_cast<Index>(i - 1);
    const auto c = static_cast<Index>(j - 1);
    entries.push_back({r, c, value});
    if (symmetric && r != c) entries.push_back({c, r, value});
    ++read;
  }
  if (read < declared) {
    throw ParseError(line_no, "expected " + std::to_string(declared) + " entries, found " + std::to_string(read));
  }
  return CsrMatrix<double>::from_triplets(static_cast<Index>(rows), static_cast<Index>(cols), std::move(entries));
}

CsrMatrix<double> read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CsrMatrix<double>& A) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.n_rows() << ' ' << A.n_cols() << ' ' << A.nnz() << '\n';
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto va = A.values();
  char buf[64];
  for (Index i = 0; i < A.n_rows(); ++i) {
    for (Offset k = rp[i]; k < rp[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", va[k]);
      out << (i + 1) << ' ' << (ci[k] + 1) << ' ' << buf << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const CsrMatrix<double>& A) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file " + path.string());
  write_matrix_market(out, A);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace mpgmres
