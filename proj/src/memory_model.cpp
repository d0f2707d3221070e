#include "mpgmres/memory_model.hpp"

#include <string>

#include "mpgmres/errors.hpp"

namespace mpgmres {

SolverMode parse_solver_mode(std::string_view text) {
  if (text == "double") return SolverMode::double_precision;
  if (text == "mixed") return SolverMode::mixed;
  throw ConfigError("unknown solver mode '" + std::string(text) + "' (expected double or mixed)");
}

}  // namespace mpgmres
