#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace mpgmres {

class SMatrixMonitor;

namespace restart {

/// Restart after a fixed number of inner iterations.
struct FixedCount {
  int iterations;
};

/// Restart once |s_{j+1}| / beta <= delta.
struct ImprovementThreshold {
  double delta;
};

/// First cycle as ImprovementThreshold (falling back to m); every later cycle
/// restarts after the iteration count of the first.
struct ImprovementThenRepeat {
  double delta;
};

/// Restart when the Arnoldi residual improved by less than `factor` over the
/// last ceil(window_fraction * m) inner iterations.
struct StallDetect {
  double window_fraction;
  double factor;
};

enum class NormKind { spectral, frobenius };

/// Restart when the monitored norm of S = (I+U)^{-1} U reaches `threshold`.
struct OrthLoss {
  NormKind norm = NormKind::spectral;
  int power_iterations = 10;
  double threshold = 0.5;
};

}  // namespace restart

using RestartPolicy = std::variant<restart::FixedCount, restart::ImprovementThreshold,
                                   restart::ImprovementThenRepeat, restart::StallDetect, restart::OrthLoss>;

/// Parses fixed:M, improve:DELTA, improve-repeat:DELTA, stall:W:F,
/// orthloss:spectral:I:TAU, orthloss:frob:TAU. Throws ConfigError.
RestartPolicy parse_restart_policy(std::string_view text);
std::string to_string(const RestartPolicy& policy);

/// Throws ConfigError unless the parameters are in range.
void validate(const RestartPolicy& policy);

/// What the policy may look at during a cycle.
struct CycleView {
  int j = 0;                          ///< inner iterations completed this cycle
  int m = 0;                          ///< cycle cap
  double beta = 0.0;                  ///< cycle-start preconditioned residual norm
  std::span<const double> residuals;  ///< |s_0| .. |s_j|, so residuals[0] == beta
  std::optional<int> repeat_length;   ///< j* recorded by ImprovementThenRepeat
};

/// ceil(window_fraction * m), at least 1.
int stall_window(double window_fraction, int m);

/// Pure restart predicate. Never true at j == 0, always true at j >= m.
/// OrthLoss needs a monitor; passing none throws ConfigError.
bool policy_should_restart(const RestartPolicy& policy, const CycleView& view, const SMatrixMonitor* monitor);

/// Per-solve restart bookkeeping: remembers the first cycle's length for
/// ImprovementThenRepeat.
class RestartController {
 public:
  RestartController(RestartPolicy policy, int m);

  bool should_restart(int j, double beta, std::span<const double> residuals, const SMatrixMonitor* monitor) const;
  void end_cycle(int j);

  const RestartPolicy& policy() const noexcept { return policy_; }
  std::optional<int> repeat_length() const noexcept { return repeat_length_; }
  bool needs_monitor() const noexcept;

 private:
  RestartPolicy policy_;
  int m_;
  std::optional<int> repeat_length_;
};

/// First inner iteration j at which the Arnoldi residual improves by less
/// than `factor` over the next `window` iterations: residuals[j] /
/// residuals[j + window] < factor. Empty when the history never stalls.
std::optional<int> find_stall_point(std::span<const double> residuals, int window, double factor);

}  // namespace mpgmres
