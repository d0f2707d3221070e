#include "mpgmres/restart_policy.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "mpgmres/errors.hpp"
#include "mpgmres/s_monitor.hpp"

namespace mpgmres {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double number(std::string_view text, std::string_view policy) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ConfigError("restart policy '" + std::string(policy) + "': bad number '" + std::string(text) + "'");
  }
  return v;
}

int integer(std::string_view text, std::string_view policy) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("restart policy '" + std::string(policy) + "': bad integer '" + std::string(text) + "'");
  }
  return v;
}

std::string shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

RestartPolicy parse_restart_policy(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view kind = parts[0];
  auto expect = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi) {
      throw ConfigError("restart policy '" + std::string(text) + "': wrong number of parameters");
    }
  };
  RestartPolicy policy;
  if (kind == "fixed") {
    expect(2, 2);
    policy = restart::FixedCount{integer(parts[1], text)};
  } else if (kind == "improve") {
    expect(2, 2);
    policy = restart::ImprovementThreshold{number(parts[1], text)};
  } else if (kind == "improve-repeat") {
    expect(2, 2);
    policy = restart::ImprovementThenRepeat{number(parts[1], text)};
  } else if (kind == "stall") {
    expect(1, 3);
    restart::StallDetect s{0.05, 1.001};
    if (parts.size() > 1) s.window_fraction = number(parts[1], text);
    if (parts.size() > 2) s.factor = number(parts[2], text);
    policy = s;
  } else if (kind == "orthloss") {
    expect(2, 4);
    restart::OrthLoss o;
    if (parts[1] == "spectral") {
      o.norm = restart::NormKind::spectral;
      if (parts.size() > 2) o.power_iterations = integer(parts[2], text);
      if (parts.size() > 3) o.threshold = number(parts[3], text);
    } else if (parts[1] == "frob" || parts[1] == "frobenius") {
      expect(2, 3);
      o.norm = restart::NormKind::frobenius;
      o.threshold = 1.0;
      if (parts.size() > 2) o.threshold = number(parts[2], text);
    } else {
      throw ConfigError("restart policy '" + std::string(text) + "': norm must be spectral or frob");
    }
    policy = o;
  } else {
    throw ConfigError("unknown restart policy '" + std::string(text) +
                      "' (fixed:M, improve:DELTA, improve-repeat:DELTA, stall:W:F, orthloss:spectral:I:TAU, "
                      "orthloss:frob:TAU)");
  }
  validate(policy);
  return policy;
}

std::string to_string(const RestartPolicy& policy) {
  return std::visit(overloaded{
                        [](const restart::FixedCount& p) { return "fixed:" + std::to_string(p.iterations); },
                        [](const restart::ImprovementThreshold& p) { return "improve:" + shortest(p.delta); },
                        [](const restart::ImprovementThenRepeat& p) { return "improve-repeat:" + shortest(p.delta); },
                        [](const restart::StallDetect& p) {
                          return "stall:" + shortest(p.window_fraction) + ":" + shortest(p.factor);
                        },
                        [](const restart::OrthLoss& p) {
                          if (p.norm == restart::NormKind::frobenius) return "orthloss:frob:" + shortest(p.threshold);
                          return "orthloss:spectral:" + std::to_string(p.power_iterations) + ":" +
                                 shortest(p.threshold);
                        },
                    },
                    policy);
}

void validate(const RestartPolicy& policy) {
  std::visit(overloaded{
                 [](const restart::FixedCount& p) {
                   if (p.iterations < 1) throw ConfigError("fixed restart count must be >= 1");
                 },
                 [](const restart::ImprovementThreshold& p) {
                   if (!(p.delta > 0.0 && p.delta < 1.0)) throw ConfigError("improvement delta must be in (0, 1)");
                 },
                 [](const restart::ImprovementThenRepeat& p) {
                   if (!(p.delta > 0.0 && p.delta < 1.0)) throw ConfigError("improvement delta must be in (0, 1)");
                 },
                 [](const restart::StallDetect& p) {
                   if (!(p.window_fraction > 0.0 && p.window_fraction <= 1.0)) {
                     throw ConfigError("stall window fraction must be in (0, 1]");
                   }
                   if (!(p.factor > 1.0)) throw ConfigError("stall factor must be > 1");
                 },
                 [](const restart::OrthLoss& p) {
                   if (!(p.threshold > 0.0)) throw ConfigError("orthogonality-loss threshold must be > 0");
                   if (p.power_iterations < 1) throw ConfigError("power iterations must be >= 1");
                 },
             },
             policy);
}

int stall_window(double window_fraction, int m) {
  const int w = static_cast<int>(std::ceil(window_fraction * static_cast<double>(m) - 1e-9));
  return w < 1 ? 1 : w;
}

bool policy_should_restart(const RestartPolicy& policy, const CycleView& view, const SMatrixMonitor* monitor) {
  if (std::holds_alternative<restart::OrthLoss>(policy) && monitor == nullptr) {
    throw ConfigError("orthogonality-loss restarts need an S-matrix monitor");
  }
  if (view.j <= 0) return false;
  if (view.j >= view.m) return true;
  const auto ratio = [&] {
    return view.beta > 0.0 ? view.residuals[static_cast<std::size_t>(view.j)] / view.beta : 0.0;
  };
  return std::visit(overloaded{
                        [&](const restart::FixedCount& p) { return view.j >= p.iterations; },
                        [&](const restart::ImprovementThreshold& p) { return ratio() <= p.delta; },
                        [&](const restart::ImprovementThenRepeat& p) {
                          if (view.repeat_length) return view.j >= *view.repeat_length;
                          return ratio() <= p.delta;
                        },
                        [&](const restart::StallDetect& p) {
                          const int w = stall_window(p.window_fraction, view.m);
                          if (view.j < w) return false;
                          const double now = view.residuals[static_cast<std::size_t>(view.j)];
                          const double then = view.residuals[static_cast<std::size_t>(view.j - w)];
                          return then < p.factor * now;
                        },
                        [&](const restart::OrthLoss& p) {
                          const double norm = p.norm == restart::NormKind::spectral
                                                  ? monitor->spectral_norm(p.power_iterations)
                                                  : monitor->frobenius_norm();
                          return norm >= p.threshold;
                        },
                    },
                    policy);
}

RestartController::RestartController(RestartPolicy policy, int m) : policy_(std::move(policy)), m_(m) {
  if (m < 1) throw ConfigError("m must be >= 1");
  validate(policy_);
}

bool RestartController::should_restart(int j, double beta, std::span<const double> residuals,
                                       const SMatrixMonitor* monitor) const {
  return policy_should_restart(policy_, CycleView{j, m_, beta, residuals, repeat_length_}, monitor);
}

void RestartController::end_cycle(int j) {
  if (std::holds_alternative<restart::ImprovementThenRepeat>(policy_) && !repeat_length_ && j > 0) {
    repeat_length_ = j;
  }
}

bool RestartController::needs_monitor() const noexcept { return std::holds_alternative<restart::OrthLoss>(policy_); }

std::optional<int> find_stall_point(std::span<const double> residuals, int window, double factor) {
  if (window < 1) throw ConfigError("stall window must be >= 1");
  const auto w = static_cast<std::size_t>(window);
  for (std::size_t j = 0; j + w < residuals.size(); ++j) {
    if (residuals[j] < factor * residuals[j + w]) return static_cast<int>(j);
  }
  return std::nullopt;
}

}  // namespace mpgmres
