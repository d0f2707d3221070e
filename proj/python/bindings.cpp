#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mpgmres/backward_error.hpp"
#include "mpgmres/experiment.hpp"
#include "mpgmres/generators.hpp"
#include "mpgmres/ilu0.hpp"
#include "mpgmres/matrix_market.hpp"
#include "mpgmres/memory_model.hpp"
#include "mpgmres/parallel.hpp"
#include "mpgmres/spmv.hpp"

namespace py = pybind11;
using namespace mpgmres;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::span<const double> view(const DoubleArray& a) {
  if (a.ndim() != 1) throw DimensionError("expected a 1-D array");
  return {a.data(), static_cast<std::size_t>(a.shape(0))};
}

py::array_t<double> to_numpy(std::vector<double> v) {
  auto* heap = new std::vector<double>(std::move(v));
  py::capsule owner(heap, [](void* p) { delete static_cast<std::vector<double>*>(p); });
  return py::array_t<double>(static_cast<py::ssize_t>(heap->size()), heap->data(), owner);
}

CsrMatrix<double> from_csr(Index n_rows, Index n_cols, const std::vector<Offset>& row_ptr,
                           const std::vector<Index>& col_idx, const DoubleArray& values) {
  auto pattern = std::make_shared<SparsityPattern>();
  pattern->n_rows = n_rows;
  pattern->n_cols = n_cols;
  pattern->row_ptr = row_ptr;
  pattern->col_idx = col_idx;
  const auto v = view(values);
  return CsrMatrix<double>(std::move(pattern), std::vector<double>(v.begin(), v.end()));
}

py::dict trace_to_dict(const ConvergenceTrace& t) {
  std::vector<int> outer, inner;
  std::vector<double> res, be, elapsed;
  std::vector<std::string> events;
  for (const auto& r : t.records) {
    outer.push_back(r.outer);
    inner.push_back(r.inner);
    res.push_back(r.arnoldi_residual);
    be.push_back(r.backward_error.value_or(std::numeric_limits<double>::quiet_NaN()));
    events.emplace_back(to_string(r.event));
    elapsed.push_back(r.elapsed);
  }
  py::dict d;
  d["outer"] = outer;
  d["inner"] = inner;
  d["arnoldi_residual"] = res;
  d["backward_error"] = be;
  d["event"] = events;
  d["elapsed_s"] = elapsed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Restarted, left-preconditioned GMRES with mixed-precision refinement";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<CsrMatrix<double>>(m, "CsrMatrix")
      .def(py::init(&from_csr), py::arg("n_rows"), py::arg("n_cols"), py::arg("row_ptr"), py::arg("col_idx"),
           py::arg("values"))
      .def_static(
          "from_dense",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
            if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
            const auto r = static_cast<Index>(a.shape(0));
            const auto c = static_cast<Index>(a.shape(1));
            return CsrMatrix<double>::from_dense(r, c, std::span<const double>(a.data(), a.size()));
          },
          py::arg("dense"))
      .def_static(
          "from_triplets",
          [](Index n_rows, Index n_cols, const std::vector<Index>& rows, const std::vector<Index>& cols,
             const DoubleArray& values) {
            const auto v = view(values);
            require_same_size(rows.size(), v.size(), "triplet rows");
            require_same_size(cols.size(), v.size(), "triplet cols");
            std::vector<Triplet<double>> t;
            t.reserve(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) t.push_back({rows[i], cols[i], v[i]});
            return CsrMatrix<double>::from_triplets(n_rows, n_cols, std::move(t));
          },
          py::arg("n_rows"), py::arg("n_cols"), py::arg("rows"), py::arg("cols"), py::arg("values"),
          "Duplicates are summed.")
      .def_property_readonly("shape", [](const CsrMatrix<double>& A) { return py::make_tuple(A.n_rows(), A.n_cols()); })
      .def_property_readonly("nnz", &CsrMatrix<double>::nnz)
      .def_property_readonly("row_ptr", [](const CsrMatrix<double>& A) {
        return std::vector<Offset>(A.row_ptr().begin(), A.row_ptr().end());
      })
      .def_property_readonly("col_idx", [](const CsrMatrix<double>& A) {
        return std::vector<Index>(A.col_idx().begin(), A.col_idx().end());
      })
      .def_property_readonly("values", [](const CsrMatrix<double>& A) {
        return to_numpy(std::vector<double>(A.values().begin(), A.values().end()));
      })
      .def("to_dense",
           [](const CsrMatrix<double>& A) {
             auto out = to_numpy(A.to_dense());
             return out.reshape({static_cast<py::ssize_t>(A.n_rows()), static_cast<py::ssize_t>(A.n_cols())});
           })
      .def("frobenius_norm", &CsrMatrix<double>::frobenius_norm)
      .def("__matmul__", [](const CsrMatrix<double>& A, const DoubleArray& x) { return to_numpy(spmv(A, view(x))); })
      .def("__repr__", [](const CsrMatrix<double>& A) {
        return "CsrMatrix(" + std::to_string(A.n_rows()) + "x" + std::to_string(A.n_cols()) +
               ", nnz=" + std::to_string(A.nnz()) + ")";
      });

  m.def("read_matrix_market", py::overload_cast<const std::filesystem::path&>(&read_matrix_market), py::arg("path"));
  m.def("write_matrix_market",
        py::overload_cast<const std::filesystem::path&, const CsrMatrix<double>&>(&write_matrix_market),
        py::arg("path"), py::arg("matrix"));
  m.def("gen_convdiff2d", &gen_convdiff2d, py::arg("k"), py::arg("beta"));
  m.def("gen_laplace1d", &gen_laplace1d, py::arg("n"));
  m.def(
      "random_solution", [](std::size_t n, std::uint64_t seed) { return to_numpy(random_solution(n, seed)); },
      py::arg("n"), py::arg("seed"));
  m.def(
      "spmv", [](const CsrMatrix<double>& A, const DoubleArray& x) { return to_numpy(spmv(A, view(x))); },
      py::arg("A"), py::arg("x"));
  m.def(
      "backward_error",
      [](const CsrMatrix<double>& A, const DoubleArray& x, const DoubleArray& b) {
        return backward_error(A, view(x), view(b));
      },
      py::arg("A"), py::arg("x"), py::arg("b"));
  m.def(
      "ilu0_apply",
      [](const CsrMatrix<double>& A, const DoubleArray& z) { return to_numpy(Ilu0<double>::factorize(A).apply(view(z))); },
      py::arg("A"), py::arg("z"), "Factorize A with ILU(0) and apply U^{-1} L^{-1} to z.");
  m.def(
      "estimate_bytes",
      [](std::uint64_t n, std::uint64_t nnz, std::uint64_t mm, const std::string& mode) {
        return estimate_bytes(n, nnz, mm, parse_solver_mode(mode));
      },
      py::arg("n"), py::arg("nnz"), py::arg("m"), py::arg("mode"));
  m.def("set_num_threads", &set_num_threads, py::arg("n"));
  m.def("num_threads", &num_threads);
  m.def("normalize_policy", [](const std::string& s) { return to_string(parse_restart_policy(s)); }, py::arg("policy"));
  m.def(
      "describe_precision",
      [](const std::string& preset, const std::string& overrides) {
        return PrecisionAssignment::parse(overrides, PrecisionAssignment::preset(preset)).describe();
      },
      py::arg("preset"), py::arg("overrides") = "");

  m.def(
      "solve",
      [](const CsrMatrix<double>& A, const DoubleArray& b, const std::optional<DoubleArray>& x0,
         const std::string& preset, const std::string& precision, const std::string& orth, const std::string& policy,
         int restart, double tol, int max_outer, bool ilu, std::size_t trace_stride) {
        GmresConfig cfg;
        cfg.m = restart;
        cfg.tol = tol;
        cfg.max_outer = max_outer;
        cfg.orth = parse_orth_scheme(orth);
        cfg.precision = PrecisionAssignment::parse(precision, PrecisionAssignment::preset(preset));
        if (!policy.empty()) cfg.policy = parse_restart_policy(policy);
        cfg.preconditioner = ilu ? PreconditionerKind::ilu0 : PreconditionerKind::none;
        cfg.trace_stride = trace_stride;
        SolveResult r;
        {
          py::gil_scoped_release release;
          const std::span<const double> xs = x0 ? view(*x0) : std::span<const double>{};
          r = gmres_solve(A, view(b), xs, cfg);
        }
        py::dict d;
        d["x"] = to_numpy(std::move(r.x));
        d["converged"] = r.status == SolveStatus::converged;
        d["backward_error"] = r.final_backward_error;
        d["iterations"] = r.iterations_per_cycle();
        d["total_inner"] = r.total_inner;
        d["setup_seconds"] = r.setup_seconds;
        d["solve_seconds"] = r.solve_seconds;
        d["backend"] = std::string(to_string(r.backend));
        d["trace"] = trace_to_dict(r.trace);
        return d;
      },
      py::arg("A"), py::arg("b"), py::arg("x0") = py::none(), py::arg("preset") = "mixed", py::arg("precision") = "",
      py::arg("orth") = "mgs", py::arg("policy") = "", py::arg("restart") = 300, py::arg("tol") = 1e-10,
      py::arg("max_outer") = 20, py::arg("ilu") = true, py::arg("trace_stride") = 0);
}
