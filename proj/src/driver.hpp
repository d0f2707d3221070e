#pragma once

// Outer/inner loop shared by the solver backends. A backend supplies an Ops
// object that owns the per-solve vectors:
//
//   double residual();                    z <- b - A x; returns the stop-test backward error
//   double begin_cycle();                 r <- M^{-1} z, v_1 <- r / beta; returns beta
//   StepOutcome step();                   one Arnoldi step plus least-squares update
//   void monitor_append(SMatrixMonitor&, std::size_t column);
//   double candidate_backward_error(int j);   instrumentation only
//   void finish_cycle(int j);             x <- x + V_j R^{-1} s
//   std::vector<double> solution() const;

#include <chrono>
#include <optional>
#include <vector>

#include "mpgmres/gmres.hpp"
#include "mpgmres/s_monitor.hpp"

namespace mpgmres::detail {

struct StepOutcome {
  double arnoldi_residual;
  bool breakdown;
};

class Stopwatch {
 public:
  Stopwatch() : start_(clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(clock::now() - start_).count(); }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_;
};

template <class Ops>
SolveResult drive(Ops& ops, const GmresConfig& cfg) {
  SolveResult res;
  const int m = cfg.m;
  const long long cap = static_cast<long long>(cfg.max_outer) * m;
  RestartController controller(cfg.effective_policy(), m);
  std::optional<SMatrixMonitor> monitor;
  if (controller.needs_monitor()) monitor.emplace(static_cast<std::size_t>(m) + 1);
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(m) + 1);

  Stopwatch clock;
  double excluded = 0.0;  // instrumentation time
  const auto elapsed = [&] { return clock.seconds() - excluded; };
  long long total = 0;

  for (int k = 0;; ++k) {
    const double be = ops.residual();
    const double beta = ops.begin_cycle();
    if (k == 0) res.initial_preconditioned_residual = beta;
    res.final_preconditioned_residual = beta;
    res.final_backward_error = be;

    TraceRecord start{k, 0, beta, be, TraceEvent::none, 0.0};
    if (be <= cfg.tol || beta == 0.0) {
      res.status = SolveStatus::converged;
      start.event = TraceEvent::converged;
    } else if (total >= cap) {
      res.status = SolveStatus::exhausted;
      start.event = TraceEvent::exhausted;
    }
    start.elapsed = elapsed();
    res.trace.records.push_back(start);
    if (start.event != TraceEvent::none) break;

    residuals.assign(1, beta);
    if (monitor) {
      monitor->reset();
      ops.monitor_append(*monitor, 0);
    }

    int j = 0;
    TraceEvent end = TraceEvent::restart;
    while (true) {
      const StepOutcome step = ops.step();
      ++j;
      ++total;
      residuals.push_back(step.arnoldi_residual);
      TraceRecord rec{k, j, step.arnoldi_residual, std::nullopt, TraceEvent::none, 0.0};
      if (cfg.trace_stride > 0 && static_cast<std::size_t>(j) % cfg.trace_stride == 0) {
        Stopwatch probe;
        rec.backward_error = ops.candidate_backward_error(j);
        excluded += probe.seconds();
      }
      if (step.breakdown) {
        end = TraceEvent::breakdown;
      } else if (monitor) {
        ops.monitor_append(*monitor, static_cast<std::size_t>(j));
      }

      bool stop = step.breakdown || j >= m || total >= cap;
      if (!stop) stop = controller.should_restart(j, beta, residuals, monitor ? &*monitor : nullptr);
      if (!stop && cfg.predict_convergence && be * (step.arnoldi_residual / beta) <= cfg.tol) stop = true;
      if (stop) rec.event = end;
      rec.elapsed = elapsed();
      res.trace.records.push_back(rec);
      if (stop) break;
    }
    ops.finish_cycle(j);
    controller.end_cycle(j);
    res.cycles.push_back(CycleSummary{k, j, beta, be, end});
  }

  res.solve_seconds = elapsed();
  res.total_inner = static_cast<int>(total);
  res.x = ops.solution();
  return res;
}

}  // namespace mpgmres::detail
