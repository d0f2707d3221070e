#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpgmres {

enum class TraceEvent { none, restart, breakdown, converged, exhausted };

std::string_view to_string(TraceEvent e) noexcept;
TraceEvent parse_trace_event(std::string_view text);

/// One row of a convergence history. inner == 0 marks the start of cycle
/// `outer`, where arnoldi_residual is beta (the preconditioned residual norm)
/// and backward_error is the stop-test value. inner >= 1 rows carry |s_{j+1}|
/// after that inner iteration and, when sampled, the backward error of the
/// candidate solution.
struct TraceRecord {
  int outer = 0;
  int inner = 0;
  double arnoldi_residual = 0.0;
  std::optional<double> backward_error;
  TraceEvent event = TraceEvent::none;
  double elapsed = 0.0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct TraceMetadata {
  std::string matrix;
  long long n = 0;
  long long nnz = 0;
  std::string config;
};

struct ConvergenceTrace {
  TraceMetadata metadata;
  std::vector<TraceRecord> records;

  /// Backward-error samples taken at inner iterations (inner >= 1).
  std::size_t inner_samples() const noexcept;

  /// |s| history of one cycle: beta followed by each inner iteration.
  std::vector<double> cycle_residuals(int outer) const;

  /// Cycle-start rows (inner == 0), in order.
  std::vector<TraceRecord> cycle_starts() const;

  int cycles() const noexcept;
};

/// Header `outer,inner,arnoldi_residual,backward_error,event,elapsed_s`;
/// floating-point fields with 17 significant digits; empty backward_error
/// when absent.
void write_csv(const ConvergenceTrace& trace, std::ostream& out);
void write_csv(const ConvergenceTrace& trace, const std::filesystem::path& path);

/// Inverse of write_csv (metadata is not stored in the CSV).
ConvergenceTrace read_csv(std::istream& in);
ConvergenceTrace read_csv(const std::filesystem::path& path);

}  // namespace mpgmres
