#include "mpgmres/gmres.hpp"

#include <algorithm>
#include <limits>
#include <variant>

#include "driver.hpp"
#include "mpgmres/backward_error.hpp"
#include "mpgmres/convert.hpp"
#include "mpgmres/ilu0.hpp"
#include "mpgmres/krylov.hpp"
#include "mpgmres/spmv.hpp"

namespace mpgmres {

RestartPolicy GmresConfig::effective_policy() const {
  return policy ? *policy : RestartPolicy{restart::FixedCount{m}};
}

void GmresConfig::validate() const {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("tol must be > 0");
  if (max_outer < 1) throw ConfigError("max_outer must be >= 1");
  if (!(breakdown_factor > 0.0)) throw ConfigError("breakdown_factor must be > 0");
  if (policy) mpgmres::validate(*policy);
}

const StorageItem* StorageReport::find(std::string_view name) const noexcept {
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

std::size_t StorageReport::total_bytes() const noexcept {
  std::size_t sum = 0;
  for (const auto& item : items) sum += item.bytes;
  return sum;
}

std::vector<int> SolveResult::iterations_per_cycle() const {
  std::vector<int> out;
  out.reserve(cycles.size());
  for (const auto& c : cycles) out.push_back(c.iterations);
  return out;
}

namespace {

using detail::StepOutcome;

std::size_t bytes_of(Precision p) { return p == Precision::low ? 4 : 8; }

StorageReport make_storage(const PrecisionAssignment& pa, std::size_t n, std::size_t nnz, std::size_t m,
                           bool preconditioned, bool emulated) {
  StorageReport r;
  r.emulated = emulated;
  auto add = [&](std::string name, Precision p, std::size_t count) {
    r.items.push_back({std::move(name), p, bytes_of(p), count * bytes_of(p)});
  };
  add("matrix_for_residual", pa.matrix_for_residual, nnz);
  add("rhs", pa.rhs, n);
  add("solution", pa.solution_update, n);
  add("residual_vector", pa.residual_vector, n);
  add("matrix_for_krylov", pa.matrix_for_krylov, nnz);
  if (preconditioned) add("preconditioner", pa.preconditioner, nnz);
  add("krylov_basis", pa.krylov_basis, n * (m + 1));
  add("candidate_vector", pa.candidate_vector, 2 * n);
  add("hessenberg", pa.hessenberg_and_givens, m * m + 3 * m + 1);
  return r;
}

class Engine {
 public:
  virtual ~Engine() = default;
  virtual SolveResult solve(std::span<const double> b, std::span<const double> x0) const = 0;
  virtual Backend kind() const noexcept = 0;
};

std::vector<double> initial_guess(std::span<const double> x0, std::size_t n) {
  if (x0.empty()) return std::vector<double>(n, 0.0);
  require_same_size(x0.size(), n, "initial guess");
  return {x0.begin(), x0.end()};
}

// ---------------------------------------------------------------------------
// Uniform backend: refinement in R, correction in C, preconditioner solve in P.

template <Real R, Real C, Real P>
class UniformEngine final : public Engine {
 public:
  UniformEngine(const CsrMatrix<double>& A, GmresConfig cfg) : cfg_(std::move(cfg)), a_(A), a_fro_(A.frobenius_norm()) {
    if constexpr (std::same_as<R, float> || std::same_as<C, float> || std::same_as<P, float>) {
      a_low_ = convert_precision<float>(A);
    }
    if (cfg_.preconditioner == PreconditionerKind::ilu0) {
      if constexpr (std::same_as<P, float>) {
        m_ = Ilu0<float>::factorize(a_low_);
      } else {
        m_ = Ilu0<double>::factorize(a_);
      }
    }
  }

  Backend kind() const noexcept override { return Backend::uniform; }

  SolveResult solve(std::span<const double> b, std::span<const double> x0) const override;

  const CsrMatrix<double>& a_high() const noexcept { return a_; }
  double a_fro() const noexcept { return a_fro_; }
  const GmresConfig& config() const noexcept { return cfg_; }

  template <Real T>
  const CsrMatrix<T>& matrix() const noexcept {
    if constexpr (std::same_as<T, float>) {
      return a_low_;
    } else {
      return a_;
    }
  }
  const Ilu0<P>* preconditioner() const noexcept { return m_ ? &*m_ : nullptr; }

 private:
  GmresConfig cfg_;
  CsrMatrix<double> a_;
  double a_fro_;
  CsrMatrix<float> a_low_;
  std::optional<Ilu0<P>> m_;
};

template <Real R, Real C, Real P>
class UniformOps {
 public:
  using EngineT = UniformEngine<R, C, P>;

  UniformOps(const EngineT& e, std::span<const double> b, std::span<const double> x0)
      : e_(e),
        n_(b.size()),
        b_hi_(b.begin(), b.end()),
        b_(convert_precision<R>(b)),
        x_(convert_precision<R>(std::span<const double>(initial_guess(x0, b.size())))),
        z_(n_),
        u_(n_),
        ks_(n_, static_cast<std::size_t>(e.config().m)) {
    if constexpr (!std::same_as<R, double>) {
      x_hi_.resize(n_);
      z_hi_.resize(n_);
    }
  }

  double residual() {
    const auto& A = e_.template matrix<R>();
    spmv_as<R>(A, std::span<const R>(x_), std::span<R>(z_));
    subtract_from_as<R>(std::span<const R>(b_), std::span<R>(z_));
    if constexpr (std::same_as<R, double>) {
      return backward_error_from_residual(z_, e_.a_fro(), x_, b_hi_);
    } else {
      cast_into(std::span<const R>(x_), std::span<double>(x_hi_));
      residual_into(e_.a_high(), x_hi_, b_hi_, z_hi_);
      return backward_error_from_residual(z_hi_, e_.a_fro(), x_hi_, b_hi_);
    }
  }

  double begin_cycle() {
    auto slot = ks_.first_column();
    if (const auto* M = e_.preconditioner()) {
      M->template apply_as<P>(std::span<const R>(z_), slot);
    } else {
      cast_into(std::span<const R>(z_), slot);
    }
    return static_cast<double>(ks_.begin());
  }

  StepOutcome step() {
    const auto s = ks_.arnoldi_step(e_.template matrix<C>(), e_.preconditioner(), e_.config().orth,
                                    e_.config().breakdown_factor);
    const C res = ks_.least_squares_update(s.h);
    return {static_cast<double>(res), s.breakdown};
  }

  void monitor_append(SMatrixMonitor& monitor, std::size_t column) { monitor.append(ks_.basis(), column); }

  double candidate_backward_error(int j) {
    ks_.compute_correction(static_cast<std::size_t>(j), std::span<C>(u_));
    std::vector<R> xc(x_);
    axpy_as<R>(R(1), std::span<const C>(u_), std::span<R>(xc));
    if constexpr (std::same_as<R, double>) {
      return backward_error(e_.a_high(), xc, b_hi_);
    } else {
      const auto xd = convert_precision<double>(xc);
      return backward_error(e_.a_high(), xd, b_hi_);
    }
  }

  void finish_cycle(int j) {
    if (j == 0) return;
    ks_.compute_correction(static_cast<std::size_t>(j), std::span<C>(u_));
    axpy_as<R>(R(1), std::span<const C>(u_), std::span<R>(x_));
  }

  std::vector<double> solution() const { return convert_precision<double>(x_); }

 private:
  const EngineT& e_;
  std::size_t n_;
  std::vector<double> b_hi_;
  std::vector<R> b_;
  std::vector<R> x_;
  std::vector<R> z_;
  std::vector<C> u_;
  std::vector<double> x_hi_, z_hi_;
  KrylovState<C> ks_;
};

template <Real R, Real C, Real P>
SolveResult UniformEngine<R, C, P>::solve(std::span<const double> b, std::span<const double> x0) const {
  require_same_size(b.size(), static_cast<std::size_t>(a_.n_rows()), "right-hand side");
  UniformOps<R, C, P> ops(*this, b, x0);
  SolveResult res = detail::drive(ops, cfg_);
  res.backend = Backend::uniform;
  res.storage = make_storage(cfg_.precision, b.size(), a_.nnz(), static_cast<std::size_t>(cfg_.m),
                             cfg_.preconditioner == PreconditionerKind::ilu0, false);
  return res;
}

// ---------------------------------------------------------------------------
// Emulated backend: binary64 storage, values rounded to their assigned width.
// Each kernel computes in the width of the variable it writes, so a LOW
// output is produced by genuine single-precision arithmetic.

template <class F>
decltype(auto) with_width(Precision p, F&& f) {
  if (p == Precision::low) return f(float{});
  return f(double{});
}

class EmulatedEngine final : public Engine {
 public:
  EmulatedEngine(const CsrMatrix<double>& A, GmresConfig cfg)
      : cfg_(std::move(cfg)),
        a_(A),
        a_fro_(A.frobenius_norm()),
        a_r_(round_values(A, cfg_.precision.matrix_for_residual)),
        a_k_(round_values(A, cfg_.precision.matrix_for_krylov)) {
    if (cfg_.preconditioner == PreconditionerKind::ilu0) {
      if (cfg_.precision.preconditioner == Precision::low) {
        m_ = Ilu0<float>::factorize(convert_precision<float>(A)).converted<double>();
      } else {
        m_ = Ilu0<double>::factorize(A);
      }
    }
  }

  Backend kind() const noexcept override { return Backend::emulated; }
  SolveResult solve(std::span<const double> b, std::span<const double> x0) const override;

  const GmresConfig& config() const noexcept { return cfg_; }
  const PrecisionAssignment& pa() const noexcept { return cfg_.precision; }
  const CsrMatrix<double>& a_high() const noexcept { return a_; }
  const CsrMatrix<double>& a_residual() const noexcept { return a_r_; }
  const CsrMatrix<double>& a_krylov() const noexcept { return a_k_; }
  double a_fro() const noexcept { return a_fro_; }
  const Ilu0<double>* preconditioner() const noexcept { return m_ ? &*m_ : nullptr; }

 private:
  GmresConfig cfg_;
  CsrMatrix<double> a_;
  double a_fro_;
  CsrMatrix<double> a_r_;
  CsrMatrix<double> a_k_;
  std::optional<Ilu0<double>> m_;
};

class EmulatedOps {
 public:
  EmulatedOps(const EmulatedEngine& e, std::span<const double> b, std::span<const double> x0)
      : e_(e),
        pa_(e.pa()),
        n_(b.size()),
        m_(static_cast<std::size_t>(e.config().m)),
        b_hi_(b.begin(), b.end()),
        b_(round_values(b, pa_.rhs)),
        x_(round_values(std::span<const double>(initial_guess(x0, b.size())), pa_.solution_update)),
        z_(n_),
        t_(n_),
        w_(n_),
        u_(n_),
        h_(m_ + 2),
        V_(n_, m_ + 1) {
    if (pa_.hessenberg_and_givens == Precision::low) {
      ls_.emplace<HessenbergLeastSquares<float>>(m_);
    } else {
      ls_.emplace<HessenbergLeastSquares<double>>(m_);
    }
    reuse_residual_ = pa_.matrix_for_residual == Precision::high && pa_.rhs == Precision::high &&
                      pa_.residual_vector == Precision::high;
  }

  double residual() {
    with_width(pa_.residual_vector, [&](auto tag) {
      using Cz = decltype(tag);
      spmv_as<Cz>(e_.a_residual(), std::span<const double>(x_), std::span<double>(z_));
      subtract_from_as<Cz>(std::span<const double>(b_), std::span<double>(z_));
    });
    if (reuse_residual_) return backward_error_from_residual(z_, e_.a_fro(), x_, b_hi_);
    return backward_error(e_.a_high(), x_, b_hi_);
  }

  double begin_cycle() {
    V_.clear();
    auto r = V_.next_column();
    with_width(pa_.candidate_vector, [&](auto tag) {
      using Cw = decltype(tag);
      if (const auto* M = e_.preconditioner()) {
        M->apply_as<Cw>(std::span<const double>(z_), r);
      } else {
        divide_as<Cw>(std::span<const double>(z_), Cw(1), r);
      }
    });
    beta_ = with_width(pa_.hessenberg_and_givens, [&](auto tag) {
      using Ch = decltype(tag);
      return static_cast<double>(norm2_as<Ch>(std::span<const double>(r)));
    });
    std::visit([&](auto& ls) { ls.reset(static_cast<typename std::decay_t<decltype(ls)>::value_type>(beta_)); }, ls_);
    if (beta_ == 0.0) return beta_;
    with_width(pa_.krylov_basis, [&](auto tag) {
      using Cv = decltype(tag);
      divide_as<Cv>(std::span<const double>(r), static_cast<Cv>(beta_), r);
    });
    V_.push();
    return beta_;
  }

  StepOutcome step() {
    const std::size_t j = V_.size() - 1;
    const std::span<const double> v = V_.column(j);
    const auto& cfg = e_.config();
    std::span<double> w(w_);
    with_width(pa_.candidate_vector, [&](auto tag) {
      using Cw = decltype(tag);
      if (const auto* M = e_.preconditioner()) {
        spmv_as<Cw>(e_.a_krylov(), v, std::span<double>(t_));
        M->apply_as<Cw>(std::span<const double>(t_), w);
      } else {
        spmv_as<Cw>(e_.a_krylov(), v, w);
      }
    });
    std::span<double> h(h_.data(), j + 2);
    double sub = 0.0;
    double sq = 0.0;
    with_width(pa_.hessenberg_and_givens, [&](auto th) {
      using Ch = decltype(th);
      with_width(pa_.candidate_vector, [&](auto tw) {
        using Cw = decltype(tw);
        orthogonalize_as<Ch, Cw>(cfg.orth, w, V_, j + 1, h);
      });
      const Ch s = norm2_as<Ch>(std::span<const double>(w));
      Ch acc = s * s;
      for (std::size_t i = 0; i <= j; ++i) acc += static_cast<Ch>(h[i]) * static_cast<Ch>(h[i]);
      sub = static_cast<double>(s);
      sq = static_cast<double>(acc);
    });
    const double eps = pa_.candidate_vector == Precision::low ? std::numeric_limits<float>::epsilon()
                                                              : std::numeric_limits<double>::epsilon();
    const bool breakdown = !(sub > cfg.breakdown_factor * eps * std::sqrt(sq));
    if (breakdown) {
      h[j + 1] = 0.0;
    } else {
      h[j + 1] = sub;
      with_width(pa_.krylov_basis, [&](auto tag) {
        using Cv = decltype(tag);
        divide_as<Cv>(std::span<const double>(w), static_cast<Cv>(sub), V_.next_column());
      });
      V_.push();
    }
    const double res = std::visit(
        [&](auto& ls) {
          using T = typename std::decay_t<decltype(ls)>::value_type;
          std::vector<T> col(h.begin(), h.end());
          return static_cast<double>(ls.add_column(std::span<const T>(col)));
        },
        ls_);
    return {res, breakdown};
  }

  void monitor_append(SMatrixMonitor& monitor, std::size_t column) {
    with_width(pa_.krylov_basis, [&](auto tag) {
      using Cv = decltype(tag);
      const Basis<double>& V = V_;
      std::vector<double> u(column);
      const auto v = V.column(column);
      for (std::size_t i = 0; i < column; ++i) u[i] = static_cast<double>(dot_as<Cv>(V.column(i), v));
      monitor.append_column(u);
    });
  }

  double candidate_backward_error(int j) {
    correction(static_cast<std::size_t>(j));
    std::vector<double> xc(x_);
    add_correction(xc);
    return backward_error(e_.a_high(), xc, b_hi_);
  }

  void finish_cycle(int j) {
    if (j == 0) return;
    correction(static_cast<std::size_t>(j));
    add_correction(x_);
  }

  std::vector<double> solution() const { return x_; }

 private:
  // u <- V_k y with R y = s, y in the Hessenberg width, u in the basis width.
  void correction(std::size_t k) {
    std::vector<double> y(k);
    std::visit(
        [&](auto& ls) {
          using T = typename std::decay_t<decltype(ls)>::value_type;
          std::vector<T> yt(k);
          ls.solve(k, std::span<T>(yt));
          std::copy(yt.begin(), yt.end(), y.begin());
        },
        ls_);
    std::fill(u_.begin(), u_.end(), 0.0);
    with_width(pa_.krylov_basis, [&](auto tag) {
      using Cv = decltype(tag);
      const Basis<double>& V = V_;
      for (std::size_t i = 0; i < k; ++i) axpy_as<Cv>(static_cast<Cv>(y[i]), V.column(i), std::span<double>(u_));
    });
  }

  void add_correction(std::vector<double>& x) const {
    with_width(pa_.solution_update, [&](auto tag) {
      using Cx = decltype(tag);
      axpy_as<Cx>(Cx(1), std::span<const double>(u_), std::span<double>(x));
    });
  }

  const EmulatedEngine& e_;
  const PrecisionAssignment& pa_;
  std::size_t n_;
  std::size_t m_;
  std::vector<double> b_hi_;
  std::vector<double> b_;
  std::vector<double> x_;
  std::vector<double> z_;
  std::vector<double> t_;
  std::vector<double> w_;
  std::vector<double> u_;
  std::vector<double> h_;
  Basis<double> V_;
  std::variant<HessenbergLeastSquares<float>, HessenbergLeastSquares<double>> ls_;
  double beta_ = 0.0;
  bool reuse_residual_ = false;
};

SolveResult EmulatedEngine::solve(std::span<const double> b, std::span<const double> x0) const {
  require_same_size(b.size(), static_cast<std::size_t>(a_.n_rows()), "right-hand side");
  EmulatedOps ops(*this, b, x0);
  SolveResult res = detail::drive(ops, cfg_);
  res.backend = Backend::emulated;
  res.storage = make_storage(cfg_.precision, b.size(), a_.nnz(), static_cast<std::size_t>(cfg_.m),
                             cfg_.preconditioner == PreconditionerKind::ilu0, true);
  return res;
}

std::unique_ptr<Engine> make_engine(const CsrMatrix<double>& A, const GmresConfig& cfg) {
  const auto& pa = cfg.precision;
  Backend backend = cfg.backend;
  if (backend == Backend::automatic) backend = pa.uniform_kernels() ? Backend::uniform : Backend::emulated;
  if (backend == Backend::emulated) return std::make_unique<EmulatedEngine>(A, cfg);
  if (pa == PrecisionAssignment::double_precision()) return std::make_unique<UniformEngine<double, double, double>>(A, cfg);
  if (pa == PrecisionAssignment::single_precision()) return std::make_unique<UniformEngine<float, float, float>>(A, cfg);
  if (pa == PrecisionAssignment::mixed()) return std::make_unique<UniformEngine<double, float, float>>(A, cfg);
  if (pa == PrecisionAssignment::single_ilu()) return std::make_unique<UniformEngine<double, double, float>>(A, cfg);
  throw ConfigError("the uniform backend supports only the double, single, mixed and single-ilu presets (got " +
                    pa.describe() + ")");
}

}  // namespace

struct GmresSolver::Setup {
  GmresConfig config;
  std::unique_ptr<Engine> engine;
  double seconds = 0.0;
};

GmresSolver::GmresSolver(const CsrMatrix<double>& A, GmresConfig config) {
  if (!A.is_square()) throw DimensionError("GMRES needs a square matrix");
  config.validate();
  detail::Stopwatch clock;
  auto setup = std::make_unique<Setup>();
  setup->engine = make_engine(A, config);
  setup->config = std::move(config);
  setup->seconds = clock.seconds();
  setup_ = std::move(setup);
}

GmresSolver::~GmresSolver() = default;
GmresSolver::GmresSolver(GmresSolver&&) noexcept = default;
GmresSolver& GmresSolver::operator=(GmresSolver&&) noexcept = default;

SolveResult GmresSolver::solve(std::span<const double> b, std::span<const double> x0) const {
  SolveResult res = setup_->engine->solve(b, x0);
  res.setup_seconds = setup_->seconds;
  return res;
}

const GmresConfig& GmresSolver::config() const noexcept { return setup_->config; }
Backend GmresSolver::backend() const noexcept { return setup_->engine->kind(); }
double GmresSolver::setup_seconds() const noexcept { return setup_->seconds; }

SolveResult gmres_solve(const CsrMatrix<double>& A, std::span<const double> b, std::span<const double> x0,
                        const GmresConfig& config) {
  GmresSolver solver(A, config);
  return solver.solve(b, x0);
}

}  // namespace mpgmres
