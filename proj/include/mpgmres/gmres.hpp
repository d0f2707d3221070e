#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpgmres/csr_matrix.hpp"
#include "mpgmres/orthogonalize.hpp"
#include "mpgmres/precision_assignment.hpp"
#include "mpgmres/restart_policy.hpp"
#include "mpgmres/trace.hpp"

namespace mpgmres {

enum class PreconditionerKind { none, ilu0 };

/// `uniform` runs the correction with one scalar type and casts at the
/// refinement boundary (DOUBLE, SINGLE, MIXED, SINGLE_ILU only). `emulated` handles any
/// per-variable assignment: values are held in binary64, rounded to their
/// assigned width on every store, and each kernel computes in the width of
/// the variable it writes. `automatic` picks `uniform` whenever it applies.
enum class Backend { automatic, uniform, emulated };

struct GmresConfig {
  int m = 300;             ///< maximum inner iterations per cycle
  double tol = 1e-10;      ///< target normwise backward error
  int max_outer = 20;      ///< the solve gives up after max_outer * m inner iterations
  OrthScheme orth = OrthScheme::mgs;
  PrecisionAssignment precision{};
  std::optional<RestartPolicy> policy;  ///< defaults to FixedCount(m)
  PreconditionerKind preconditioner = PreconditionerKind::ilu0;
  Backend backend = Backend::automatic;

  /// Sample the backward error of the candidate solution every `trace_stride`
  /// inner iterations; 0 disables intermediate samples.
  std::size_t trace_stride = 0;

  /// End a cycle early once the Arnoldi residual predicts the tolerance is
  /// met (backward error at cycle start scaled by |s_{j+1}|/beta <= tol).
  bool predict_convergence = true;

  /// h_{j+1,j} <= breakdown_factor * eps * ||w|| is treated as a lucky
  /// breakdown (eps of the Hessenberg precision).
  double breakdown_factor = 16.0;

  RestartPolicy effective_policy() const;
  void validate() const;
};

enum class SolveStatus { converged, exhausted };

std::string_view to_string(SolveStatus s) noexcept;
std::string_view to_string(PreconditionerKind p) noexcept;
std::string_view to_string(Backend b) noexcept;
PreconditionerKind parse_preconditioner(std::string_view text);

struct CycleSummary {
  int outer = 0;
  int iterations = 0;
  double beta = 0.0;             ///< preconditioned residual norm at cycle start
  double start_backward_error = 0.0;
  TraceEvent end_event = TraceEvent::restart;
};

/// Element width and footprint of one solver buffer.
struct StorageItem {
  std::string name;
  Precision precision;
  std::size_t element_bytes;  ///< bytes per stored value
  std::size_t bytes;          ///< total bytes
};

struct StorageReport {
  bool emulated = false;  ///< widths are logical; storage is binary64
  std::vector<StorageItem> items;

  const StorageItem* find(std::string_view name) const noexcept;
  std::size_t total_bytes() const noexcept;
};

struct SolveResult {
  std::vector<double> x;
  SolveStatus status = SolveStatus::exhausted;
  double final_backward_error = 0.0;
  double initial_preconditioned_residual = 0.0;
  double final_preconditioned_residual = 0.0;
  int total_inner = 0;
  std::vector<CycleSummary> cycles;
  ConvergenceTrace trace;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  Backend backend = Backend::uniform;
  StorageReport storage;

  std::vector<int> iterations_per_cycle() const;
};

/// Solver bound to one matrix. Construction builds the reduced-precision
/// matrix copy and the preconditioner required by the configuration; solve()
/// is const and may be called concurrently.
class GmresSolver {
 public:
  GmresSolver(const CsrMatrix<double>& A, GmresConfig config);
  ~GmresSolver();
  GmresSolver(GmresSolver&&) noexcept;
  GmresSolver& operator=(GmresSolver&&) noexcept;

  /// x0 defaults to zero.
  SolveResult solve(std::span<const double> b, std::span<const double> x0 = {}) const;

  const GmresConfig& config() const noexcept;
  Backend backend() const noexcept;
  double setup_seconds() const noexcept;

  struct Setup;

 private:
  std::unique_ptr<const Setup> setup_;
};

/// One-shot solve; setup time is included in the result.
SolveResult gmres_solve(const CsrMatrix<double>& A, std::span<const double> b, std::span<const double> x0,
                        const GmresConfig& config);

inline SolveResult gmres_solve(const CsrMatrix<double>& A, const std::vector<double>& b, const GmresConfig& config) {
  return gmres_solve(A, std::span<const double>(b), {}, config);
}

}  // namespace mpgmres
