#include "mpgmres/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mpgmres/generators.hpp"
#include "mpgmres/matrix_market.hpp"
#include "mpgmres/spmv.hpp"

namespace mpgmres {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& context) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(context + ": bad number '" + text + "'");
  }
  return v;
}

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_stalls(const std::vector<std::optional<int>>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += v[i] ? std::to_string(*v[i]) : "-";
  }
  return out;
}

}  // namespace

LoadedMatrix load_matrix(const std::string& source) {
  const auto parts = split(source, ':');
  if (!parts.empty() && parts[0] == "convdiff") {
    if (parts.size() != 3) throw ConfigError("matrix source convdiff:K:BETA expected, got '" + source + "'");
    const int k = parse_number<int>(parts[1], source);
    const double beta = parse_number<double>(parts[2], source);
    return {source, gen_convdiff2d(k, beta)};
  }
  if (!parts.empty() && parts[0] == "laplace1d") {
    if (parts.size() != 2) throw ConfigError("matrix source laplace1d:N expected, got '" + source + "'");
    return {source, gen_laplace1d(parse_number<int>(parts[1], source))};
  }
  const std::filesystem::path path(source);
  return {path.stem().string(), read_matrix_market(path)};
}

std::vector<double> read_vector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vector file " + path.string());
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    if (token.front() == '%' || token.front() == '#') {
      std::getline(in, token);
      continue;
    }
    out.push_back(parse_number<double>(token, path.string()));
  }
  return out;
}

GmresConfig ExperimentSpec::config() const {
  GmresConfig cfg;
  cfg.m = m;
  cfg.tol = tol;
  cfg.max_outer = max_outer;
  cfg.orth = orth;
  cfg.precision = PrecisionAssignment::parse(precision_overrides,
                                             preset == "custom" ? PrecisionAssignment{} : PrecisionAssignment::preset(preset));
  if (!policy.empty()) cfg.policy = parse_restart_policy(policy);
  cfg.preconditioner = preconditioner;
  cfg.backend = backend;
  cfg.trace_stride = trace_stride;
  cfg.validate();
  return cfg;
}

double median(std::vector<double> values) {
  if (values.empty()) throw ConfigError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double geometric_mean(const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("geometric mean of an empty set");
  double log_sum = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw ConfigError("geometric mean needs positive values");
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

ExperimentResult run_experiment(const ExperimentSpec& spec) { return run_experiment(spec, load_matrix(spec.matrix)); }

ExperimentResult run_experiment(const ExperimentSpec& spec, const LoadedMatrix& matrix) {
  if (spec.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  const auto& A = matrix.A;
  if (!A.is_square()) throw DimensionError("matrix " + matrix.name + " is not square");
  ExperimentResult out;
  out.matrix = matrix.name;
  out.n = A.n_rows();
  out.nnz = static_cast<long long>(A.nnz());
  out.config = spec.config();
  out.preset = out.config.precision.name();

  const auto n = static_cast<std::size_t>(A.n_rows());
  if (spec.rhs_file) {
    out.b = read_vector(*spec.rhs_file);
    require_same_size(out.b.size(), n, "right-hand side file");
  } else {
    out.x_true = random_solution(n, spec.seed);
    out.b = spmv(A, out.x_true);
  }

  for (int rep = 0; rep < spec.repetitions; ++rep) {
    GmresSolver solver(A, out.config);
    out.result = solver.solve(out.b);
    out.seconds.push_back(out.result.setup_seconds + out.result.solve_seconds);
  }
  out.median_seconds = median(out.seconds);
  out.min_seconds = *std::min_element(out.seconds.begin(), out.seconds.end());
  out.max_seconds = *std::max_element(out.seconds.begin(), out.seconds.end());

  if (!out.x_true.empty()) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num = std::max(num, std::abs(out.result.x[i] - out.x_true[i]));
      den = std::max(den, std::abs(out.x_true[i]));
    }
    out.forward_error = den > 0.0 ? num / den : num;
  }

  const int window = stall_window(0.05, out.config.m);
  for (const auto& c : out.result.cycles) {
    const auto res = out.result.trace.cycle_residuals(c.outer);
    out.stall_points.push_back(find_stall_point(res, window, 1.001));
  }

  auto& meta = out.result.trace.metadata;
  meta.matrix = out.matrix;
  meta.n = out.n;
  meta.nnz = out.nnz;
  meta.config = out.preset + " " + std::string(to_string(out.config.orth)) + " " +
                to_string(out.config.effective_policy());
  if (spec.trace_path) write_csv(out.result.trace, *spec.trace_path);
  return out;
}

std::string summary_line(const ExperimentResult& r) {
  std::string s = r.matrix + " n=" + std::to_string(r.n) + " nnz=" + std::to_string(r.nnz) + " preset=" + r.preset +
                  " orth=" + std::string(to_string(r.config.orth)) + " policy=" +
                  to_string(r.config.effective_policy()) + " : " + std::string(to_string(r.result.status)) +
                  " backward_error=" + fmt(r.result.final_backward_error, "%.3e") +
                  " cycles=" + std::to_string(r.result.cycles.size()) +
                  " inner=" + std::to_string(r.result.total_inner) + " [" +
                  join_ints(r.result.iterations_per_cycle(), ',') + "]" + " time median=" +
                  fmt(r.median_seconds, "%.4f") + "s min=" + fmt(r.min_seconds, "%.4f") +
                  "s max=" + fmt(r.max_seconds, "%.4f") + "s";
  if (r.forward_error) s += " forward_error=" + fmt(*r.forward_error, "%.3e");
  return s;
}

void write_summary_header(std::ostream& out) {
  out << "matrix,n,nnz,preset,precision,orth,policy,m,tol,status,cycles,total_inner,iterations_per_cycle,"
         "final_backward_error,forward_error,setup_s,median_s,min_s,max_s,repetitions,stall_points\n";
}

void write_summary_row(std::ostream& out, const ExperimentResult& r) {
  const auto& c = r.config;
  out << r.matrix << ',' << r.n << ',' << r.nnz << ',' << r.preset << ',' << '"' << c.precision.describe() << '"'
      << ',' << to_string(c.orth) << ',' << to_string(c.effective_policy()) << ',' << c.m << ','
      << fmt(c.tol, "%.3g") << ',' << to_string(r.result.status) << ',' << r.result.cycles.size() << ','
      << r.result.total_inner << ',' << join_ints(r.result.iterations_per_cycle(), ';') << ','
      << fmt(r.result.final_backward_error, "%.17g") << ','
      << (r.forward_error ? fmt(*r.forward_error, "%.17g") : std::string()) << ','
      << fmt(r.result.setup_seconds, "%.6f") << ',' << fmt(r.median_seconds, "%.6f") << ','
      << fmt(r.min_seconds, "%.6f") << ',' << fmt(r.max_seconds, "%.6f") << ',' << r.seconds.size() << ','
      << join_stalls(r.stall_points) << '\n';
}

ComparisonResult run_comparison(const ExperimentSpec& base, const std::vector<std::string>& matrices,
                                const std::vector<std::string>& presets, bool calibrate) {
  if (presets.size() < 2) throw ConfigError("comparison needs at least two presets");
  if (matrices.empty()) throw ConfigError("comparison needs at least one matrix");
  ComparisonResult out;
  out.baseline = presets.front();
  std::vector<std::vector<double>> speedups(presets.size());

  for (const auto& source : matrices) {
    const LoadedMatrix matrix = load_matrix(source);
    ExperimentSpec spec = base;
    spec.matrix = source;
    spec.trace_path.reset();
    if (calibrate) {
      ExperimentSpec probe = spec;
      probe.preset = presets.front();
      probe.policy.clear();
      probe.repetitions = 1;
      const ExperimentResult cal = run_experiment(probe, matrix);
      const int length = std::max(1, cal.result.total_inner / 2);
      const long long budget = static_cast<long long>(base.m) * base.max_outer;
      spec.m = length;
      spec.policy.clear();
      spec.max_outer = static_cast<int>(std::max<long long>(1, (budget + length - 1) / length));
    }

    std::vector<ExperimentResult> runs;
    for (const auto& preset : presets) {
      ExperimentSpec s = spec;
      s.preset = preset;
      runs.push_back(run_experiment(s, matrix));
    }
    for (std::size_t v = 0; v < presets.size(); ++v) {
      const double speedup = runs[0].median_seconds / runs[v].median_seconds;
      out.rows.push_back({matrix.name, presets[v], runs[0].median_seconds, runs[v].median_seconds, speedup,
                          runs[v].converged(), spec.m});
      speedups[v].push_back(speedup);
    }
    for (auto& r : runs) out.runs.push_back(std::move(r));
  }
  for (std::size_t v = 0; v < presets.size(); ++v) out.geometric_means.emplace_back(presets[v], geometric_mean(speedups[v]));
  return out;
}

void write_comparison_csv(const ComparisonResult& c, std::ostream& out) {
  out << "matrix,variant,baseline_s,variant_s,speedup,converged,restart_length\n";
  for (const auto& r : c.rows) {
    out << r.matrix << ',' << r.variant << ',' << fmt(r.baseline_seconds, "%.6f") << ','
        << fmt(r.variant_seconds, "%.6f") << ',' << fmt(r.speedup, "%.6f") << ',' << (r.converged ? 1 : 0) << ','
        << r.restart_length << '\n';
  }
  for (const auto& [variant, g] : c.geometric_means) {
    out << "geomean," << variant << ",,," << fmt(g, "%.6f") << ",,\n";
  }
}

}  // namespace mpgmres
