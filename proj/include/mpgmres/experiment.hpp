#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mpgmres/csr_matrix.hpp"
#include "mpgmres/gmres.hpp"

namespace mpgmres {

/// Matrix source: "convdiff:K:BETA", "laplace1d:N", or a Matrix Market path.
struct LoadedMatrix {
  std::string name;
  CsrMatrix<double> A;
};
LoadedMatrix load_matrix(const std::string& source);

/// Whitespace-separated values, one right-hand side.
std::vector<double> read_vector(const std::filesystem::path& path);

struct ExperimentSpec {
  std::string matrix = "convdiff:40:1";
  std::optional<std::filesystem::path> rhs_file;  ///< default: b = A x_true, x_true ~ U(0,1)
  std::string preset = "mixed";
  std::string precision_overrides;  ///< field=width list applied on top of the preset
  OrthScheme orth = OrthScheme::mgs;
  std::string policy;  ///< empty: fixed restart at m
  PreconditionerKind preconditioner = PreconditionerKind::ilu0;
  Backend backend = Backend::automatic;
  double tol = 1e-10;
  int m = 300;
  int max_outer = 20;
  std::uint64_t seed = 1;
  std::size_t trace_stride = 0;
  int repetitions = 1;
  std::optional<std::filesystem::path> trace_path;

  GmresConfig config() const;
};

struct ExperimentResult {
  std::string matrix;
  long long n = 0;
  long long nnz = 0;
  std::string preset;
  GmresConfig config;
  std::vector<double> x_true;  ///< empty when the rhs came from a file
  std::vector<double> b;
  SolveResult result;  ///< the last repetition
  std::vector<double> seconds;  ///< setup + solve of each repetition
  double median_seconds = 0.0;
  double min_seconds = 0.0;
  double max_seconds = 0.0;
  std::optional<double> forward_error;  ///< ||x - x_true||_inf / ||x_true||_inf
  /// Per cycle: first inner iteration after which the Arnoldi residual
  /// improves by less than 1.001 over the next ceil(0.05 m) iterations.
  std::vector<std::optional<int>> stall_points;

  bool converged() const noexcept { return result.status == SolveStatus::converged; }
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Same as run_experiment on an already loaded matrix.
ExperimentResult run_experiment(const ExperimentSpec& spec, const LoadedMatrix& matrix);

double median(std::vector<double> values);
double geometric_mean(const std::vector<double>& values);

std::string summary_line(const ExperimentResult& r);
void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const ExperimentResult& r);

struct ComparisonRow {
  std::string matrix;
  std::string variant;
  double baseline_seconds;
  double variant_seconds;
  double speedup;  ///< baseline / variant
  bool converged;
  int restart_length;
};

struct ComparisonResult {
  std::string baseline;
  std::vector<ComparisonRow> rows;
  std::vector<std::pair<std::string, double>> geometric_means;  ///< per variant, across matrices
  std::vector<ExperimentResult> runs;
};

/// Runs `presets` (the first is the baseline) on every matrix with otherwise
/// identical settings. With `calibrate`, each matrix is first solved with the
/// baseline and restart length `base.m`; every compared solver then restarts
/// after half as many inner iterations as that calibration run needed.
ComparisonResult run_comparison(const ExperimentSpec& base, const std::vector<std::string>& matrices,
                                const std::vector<std::string>& presets, bool calibrate);

/// Columns matrix,variant,baseline_s,variant_s,speedup,converged,restart_length,
/// followed by one geomean row per variant.
void write_comparison_csv(const ComparisonResult& c, std::ostream& out);

}  // namespace mpgmres
