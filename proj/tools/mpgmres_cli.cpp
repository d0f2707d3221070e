// mpgmres: run, compare and size restarted mixed-precision GMRES solves.
//
//   mpgmres run --matrix convdiff:60:1 --preset mixed --policy stall:0.05:1.001 --trace out.csv
//   mpgmres compare --matrix convdiff:400:1 --matrix big.mtx --presets double,mixed --calibrate
//   mpgmres memory --n 1000 --nnz 5000 -m 10
//   mpgmres generate --matrix convdiff:40:1 --output cd40.mtx
//
// Exit status: 0 success, 1 bad arguments or configuration, 2 a solve did
// not converge, 3 input/output or numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mpgmres/experiment.hpp"
#include "mpgmres/generators.hpp"
#include "mpgmres/matrix_market.hpp"
#include "mpgmres/memory_model.hpp"
#include "mpgmres/parallel.hpp"
#include "mpgmres/spmv.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kNotConverged = 2, kIo = 3 };

struct SolverOptions {
  std::string preset = "mixed";
  std::string precision;
  std::string orth = "mgs";
  std::string policy;
  std::string preconditioner = "ilu0";
  std::string backend = "automatic";
  double tol = 1e-10;
  int m = 300;
  int max_outer = 20;
  std::uint64_t seed = 1;
  int repetitions = 1;
};

void add_solver_options(CLI::App* app, SolverOptions& o) {
  app->add_option("--preset", o.preset, "double, single, mixed, limited-mixed, single-ilu or custom")
      ->capture_default_str();
  app->add_option("--precision", o.precision, "per-variable overrides, e.g. V=low,A_r=low");
  app->add_option("--orth", o.orth, "mgs, cgsr or cgs")->capture_default_str();
  app->add_option("--policy", o.policy,
                  "fixed:M, improve:DELTA, improve-repeat:DELTA, stall:W:F, orthloss:spectral:I:TAU, orthloss:frob:TAU");
  app->add_option("--preconditioner", o.preconditioner, "ilu0 or none")->capture_default_str();
  app->add_option("--backend", o.backend, "automatic, uniform or emulated")->capture_default_str();
  app->add_option("--tol", o.tol, "target backward error")->capture_default_str();
  app->add_option("-m,--restart", o.m, "maximum inner iterations per cycle")->capture_default_str();
  app->add_option("--max-outer", o.max_outer, "give up after max-outer * m inner iterations")->capture_default_str();
  app->add_option("--seed", o.seed, "seed of the random solution vector")->capture_default_str();
  app->add_option("--repetitions", o.repetitions, "timed repetitions")->capture_default_str();
}

mpgmres::Backend parse_backend(const std::string& s) {
  if (s == "automatic" || s == "auto") return mpgmres::Backend::automatic;
  if (s == "uniform") return mpgmres::Backend::uniform;
  if (s == "emulated") return mpgmres::Backend::emulated;
  throw mpgmres::ConfigError("unknown backend '" + s + "'");
}

mpgmres::ExperimentSpec make_spec(const SolverOptions& o) {
  mpgmres::ExperimentSpec spec;
  spec.preset = o.preset;
  spec.precision_overrides = o.precision;
  spec.orth = mpgmres::parse_orth_scheme(o.orth);
  spec.policy = o.policy;
  spec.preconditioner = mpgmres::parse_preconditioner(o.preconditioner);
  spec.backend = parse_backend(o.backend);
  spec.tol = o.tol;
  spec.m = o.m;
  spec.max_outer = o.max_outer;
  spec.seed = o.seed;
  spec.repetitions = o.repetitions;
  return spec;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw mpgmres::Error("cannot write " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restarted mixed-precision GMRES experiments"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "kernel threads (default: MPGMRES_NUM_THREADS or all cores)");

  SolverOptions run_opts;
  std::string run_matrix = "convdiff:40:1";
  std::string rhs_file, trace_file, summary_file;
  std::size_t trace_stride = 0;
  auto* run = app.add_subcommand("run", "solve one system and report convergence and timing");
  run->add_option("--matrix", run_matrix, "convdiff:K:BETA, laplace1d:N or a Matrix Market file")
      ->capture_default_str();
  run->add_option("--rhs", rhs_file, "right-hand side file (default: b = A x, x ~ U(0,1))");
  run->add_option("--trace", trace_file, "write the convergence trace CSV here");
  run->add_option("--trace-stride", trace_stride, "sample the true backward error every N inner iterations");
  run->add_option("--summary", summary_file, "append a summary CSV row here");
  add_solver_options(run, run_opts);

  SolverOptions cmp_opts;
  std::vector<std::string> cmp_matrices;
  std::string cmp_presets = "double,mixed";
  std::string cmp_output;
  bool calibrate = false;
  auto* cmp = app.add_subcommand("compare", "time several presets on the same systems");
  cmp->add_option("--matrix", cmp_matrices, "matrix sources (repeatable)")->required();
  cmp->add_option("--presets", cmp_presets, "comma-separated, first is the baseline")->capture_default_str();
  cmp->add_flag("--calibrate", calibrate, "restart after half the baseline's iteration count");
  cmp->add_option("--output", cmp_output, "speedup table CSV");
  add_solver_options(cmp, cmp_opts);

  long long mem_n = 0, mem_nnz = 0;
  int mem_m = 300;
  std::string mem_matrix;
  auto* mem = app.add_subcommand("memory", "leading-order working-set size, double vs mixed");
  mem->add_option("--n", mem_n, "rows");
  mem->add_option("--nnz", mem_nnz, "nonzeros");
  mem->add_option("--matrix", mem_matrix, "take n and nnz from this matrix");
  mem->add_option("-m,--restart", mem_m, "restart length")->capture_default_str();

  std::string gen_matrix, gen_output, gen_rhs;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("generate", "write a generated matrix as Matrix Market");
  gen->add_option("--matrix", gen_matrix, "convdiff:K:BETA or laplace1d:N")->required();
  gen->add_option("--output", gen_output, "output .mtx path")->required();
  gen->add_option("--rhs", gen_rhs, "also write b = A x for a seeded U(0,1) x");
  gen->add_option("--seed", gen_seed, "seed for --rhs")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    mpgmres::set_num_threads(threads);

    if (*run) {
      auto spec = make_spec(run_opts);
      spec.matrix = run_matrix;
      if (!rhs_file.empty()) spec.rhs_file = rhs_file;
      if (!trace_file.empty()) spec.trace_path = trace_file;
      spec.trace_stride = trace_stride;
      const auto r = mpgmres::run_experiment(spec);
      std::cout << mpgmres::summary_line(r) << '\n';
      std::cout << "setup " << r.result.setup_seconds << " s, threads " << mpgmres::num_threads() << ", backend "
                << mpgmres::to_string(r.result.backend) << '\n';
      if (!summary_file.empty()) {
        const bool fresh = !std::filesystem::exists(summary_file) || std::filesystem::file_size(summary_file) == 0;
        std::ofstream out(summary_file, std::ios::app);
        if (!out) throw mpgmres::Error("cannot write " + summary_file);
        if (fresh) mpgmres::write_summary_header(out);
        mpgmres::write_summary_row(out, r);
      }
      return r.converged() ? kOk : kNotConverged;
    }

    if (*cmp) {
      std::vector<std::string> presets;
      std::stringstream in(cmp_presets);
      for (std::string p; std::getline(in, p, ',');) presets.push_back(p);
      const auto c = mpgmres::run_comparison(make_spec(cmp_opts), cmp_matrices, presets, calibrate);
      for (const auto& r : c.runs) std::cout << mpgmres::summary_line(r) << '\n';
      mpgmres::write_comparison_csv(c, std::cout);
      if (!cmp_output.empty()) {
        auto out = open_output(cmp_output);
        mpgmres::write_comparison_csv(c, out);
      }
      for (const auto& r : c.rows) {
        if (!r.converged) return kNotConverged;
      }
      return kOk;
    }

    if (*mem) {
      if (!mem_matrix.empty()) {
        const auto loaded = mpgmres::load_matrix(mem_matrix);
        mem_n = loaded.A.n_rows();
        mem_nnz = static_cast<long long>(loaded.A.nnz());
      }
      if (mem_n < 1 || mem_nnz < 1 || mem_m < 1) throw mpgmres::ConfigError("memory: need positive n, nnz and m");
      const auto d = mpgmres::estimate_bytes(mem_n, mem_nnz, mem_m, mpgmres::SolverMode::double_precision);
      const auto x = mpgmres::estimate_bytes(mem_n, mem_nnz, mem_m, mpgmres::SolverMode::mixed);
      std::printf("n=%lld nnz=%lld m=%d\ndouble %llu bytes\nmixed  %llu bytes (%.1f%% of double)\n", mem_n, mem_nnz,
                  mem_m, static_cast<unsigned long long>(d), static_cast<unsigned long long>(x),
                  100.0 * static_cast<double>(x) / static_cast<double>(d));
      return kOk;
    }

    if (*gen) {
      const auto loaded = mpgmres::load_matrix(gen_matrix);
      mpgmres::write_matrix_market(gen_output, loaded.A);
      if (!gen_rhs.empty()) {
        const auto x = mpgmres::random_solution(static_cast<std::size_t>(loaded.A.n_rows()), gen_seed);
        const auto b = mpgmres::spmv(loaded.A, x);
        auto out = open_output(gen_rhs);
        char buf[40];
        for (double v : b) {
          std::snprintf(buf, sizeof buf, "%.17g\n", v);
          out << buf;
        }
      }
      std::cout << "wrote " << gen_output << " (n=" << loaded.A.n_rows() << ", nnz=" << loaded.A.nnz() << ")\n";
      return kOk;
    }
  } catch (const mpgmres::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const mpgmres::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}
