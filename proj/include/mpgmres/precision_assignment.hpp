#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mpgmres/precision.hpp"

namespace mpgmres {

/// Width of every variable of restarted, left-preconditioned GMRES.
///
/// Refinement variables: the matrix used for the residual, the right-hand
/// side, the solution (and its update), and the residual vector z, which
/// first receives A*x and then b - A*x.
///
/// Correction variables: the matrix used for the next Krylov vector, the
/// preconditioner, the basis V, the candidate vector w, and the Hessenberg
/// data (H, rotations, s, and the triangular solve).
struct PrecisionAssignment {
  Precision matrix_for_residual = Precision::high;
  Precision rhs = Precision::high;
  Precision solution_update = Precision::high;
  Precision residual_vector = Precision::high;
  Precision matrix_for_krylov = Precision::high;
  Precision preconditioner = Precision::high;
  Precision krylov_basis = Precision::high;
  Precision candidate_vector = Precision::high;
  Precision hessenberg_and_givens = Precision::high;

  static PrecisionAssignment double_precision();
  static PrecisionAssignment single_precision();
  /// HIGH for the residual and the solution update, LOW everywhere else.
  static PrecisionAssignment mixed();
  /// LOW only for the Krylov matrix, the preconditioner and the basis.
  static PrecisionAssignment limited_mixed();
  /// HIGH solver with a LOW preconditioner.
  static PrecisionAssignment single_ilu();

  /// Preset names: double, single, mixed, limited-mixed, single-ilu.
  static PrecisionAssignment preset(std::string_view name);

  /// Comma-separated field=width list applied on top of `base`, e.g.
  /// "rhs=low,krylov_basis=low". Field names match the members above; the
  /// short aliases A_r, b, x, z, A_k, M, V, w, H are also accepted.
  static PrecisionAssignment parse(std::string_view overrides, PrecisionAssignment base);
  static PrecisionAssignment parse(std::string_view overrides) { return parse(overrides, double_precision()); }

  bool refinement_uniform() const noexcept;
  bool correction_uniform() const noexcept;
  Precision refinement_precision() const noexcept { return matrix_for_residual; }
  Precision correction_precision() const noexcept { return matrix_for_krylov; }

  /// True for DOUBLE, SINGLE, MIXED and SINGLE_ILU: solvable with
  /// uniform-precision kernels plus casts at the refinement boundary (and a
  /// LOW triangular solve for SINGLE_ILU).
  bool uniform_kernels() const noexcept;

  /// Name of the matching preset, or "custom".
  std::string name() const;

  /// "A_r=high,b=high,..." in field order.
  std::string describe() const;

  friend bool operator==(const PrecisionAssignment&, const PrecisionAssignment&) = default;
};

}  // namespace mpgmres
