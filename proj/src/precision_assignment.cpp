#include "mpgmres/precision_assignment.hpp"

#include <array>
#include <string>
#include <utility>

#include "mpgmres/errors.hpp"

namespace mpgmres {

namespace {

constexpr Precision L = Precision::low;
constexpr Precision H = Precision::high;

struct Field {
  std::string_view name;
  std::string_view alias;
  Precision PrecisionAssignment::*member;
};

constexpr std::array<Field, 9> kFields{{
    {"matrix_for_residual", "A_r", &PrecisionAssignment::matrix_for_residual},
    {"rhs", "b", &PrecisionAssignment::rhs},
    {"solution_update", "x", &PrecisionAssignment::solution_update},
    {"residual_vector", "z", &PrecisionAssignment::residual_vector},
    {"matrix_for_krylov", "A_k", &PrecisionAssignment::matrix_for_krylov},
    {"preconditioner", "M", &PrecisionAssignment::preconditioner},
    {"krylov_basis", "V", &PrecisionAssignment::krylov_basis},
    {"candidate_vector", "w", &PrecisionAssignment::candidate_vector},
    {"hessenberg_and_givens", "H", &PrecisionAssignment::hessenberg_and_givens},
}};

PrecisionAssignment make(Precision refinement, Precision correction) {
  return {refinement, refinement, refinement, refinement, correction, correction, correction, correction, correction};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

PrecisionAssignment PrecisionAssignment::double_precision() { return make(H, H); }
PrecisionAssignment PrecisionAssignment::single_precision() { return make(L, L); }
PrecisionAssignment PrecisionAssignment::mixed() { return make(H, L); }

PrecisionAssignment PrecisionAssignment::limited_mixed() {
  PrecisionAssignment p = make(H, H);
  p.matrix_for_krylov = L;
  p.preconditioner = L;
  p.krylov_basis = L;
  return p;
}

PrecisionAssignment PrecisionAssignment::single_ilu() {
  PrecisionAssignment p = make(H, H);
  p.preconditioner = L;
  return p;
}

PrecisionAssignment PrecisionAssignment::preset(std::string_view name) {
  if (name == "double") return double_precision();
  if (name == "single") return single_precision();
  if (name == "mixed") return mixed();
  if (name == "limited-mixed" || name == "limited_mixed") return limited_mixed();
  if (name == "single-ilu" || name == "single_ilu") return single_ilu();
  throw ConfigError("unknown precision preset '" + std::string(name) +
                    "' (double, single, mixed, limited-mixed, single-ilu)");
}

PrecisionAssignment PrecisionAssignment::parse(std::string_view overrides, PrecisionAssignment base) {
  while (!overrides.empty()) {
    const auto comma = overrides.find(',');
    const std::string_view item = trim(overrides.substr(0, comma));
    overrides = comma == std::string_view::npos ? std::string_view{} : overrides.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected field=width, got '" + std::string(item) + "'");
    const std::string_view key = trim(item.substr(0, eq));
    const std::string_view value = trim(item.substr(eq + 1));
    const Field* field = nullptr;
    for (const auto& f : kFields) {
      if (key == f.name || key == f.alias) field = &f;
    }
    if (field == nullptr) throw ConfigError("unknown precision field '" + std::string(key) + "'");
    try {
      base.*(field->member) = parse_precision(value);
    } catch (const Error& e) {
      throw ConfigError(std::string(key) + ": " + e.what());
    }
  }
  return base;
}

bool PrecisionAssignment::refinement_uniform() const noexcept {
  return rhs == matrix_for_residual && solution_update == matrix_for_residual &&
         residual_vector == matrix_for_residual;
}

bool PrecisionAssignment::correction_uniform() const noexcept {
  return preconditioner == matrix_for_krylov && krylov_basis == matrix_for_krylov &&
         candidate_vector == matrix_for_krylov && hessenberg_and_givens == matrix_for_krylov;
}

bool PrecisionAssignment::uniform_kernels() const noexcept {
  return *this == double_precision() || *this == single_precision() || *this == mixed() || *this == single_ilu();
}

std::string PrecisionAssignment::name() const {
  if (*this == double_precision()) return "double";
  if (*this == single_precision()) return "single";
  if (*this == mixed()) return "mixed";
  if (*this == limited_mixed()) return "limited-mixed";
  if (*this == single_ilu()) return "single-ilu";
  return "custom";
}

std::string PrecisionAssignment::describe() const {
  std::string out;
  for (const auto& f : kFields) {
    if (!out.empty()) out += ',';
    out += f.alias;
    out += '=';
    out += to_string(this->*(f.member));
  }
  return out;
}

}  // namespace mpgmres
