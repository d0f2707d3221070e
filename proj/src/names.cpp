#include <string>

#include "mpgmres/errors.hpp"
#include "mpgmres/gmres.hpp"
#include "mpgmres/orthogonalize.hpp"

namespace mpgmres {

std::string_view to_string(OrthScheme s) noexcept {
  switch (s) {
    case OrthScheme::mgs: return "mgs";
    case OrthScheme::cgsr: return "cgsr";
    case OrthScheme::cgs: return "cgs";
  }
  return "?";
}

OrthScheme parse_orth_scheme(std::string_view text) {
  if (text == "mgs" || text == "MGS") return OrthScheme::mgs;
  if (text == "cgsr" || text == "CGSR") return OrthScheme::cgsr;
  if (text == "cgs" || text == "CGS") return OrthScheme::cgs;
  throw ConfigError("unknown orthogonalization '" + std::string(text) + "' (mgs, cgsr, cgs)");
}

std::string_view to_string(SolveStatus s) noexcept { return s == SolveStatus::converged ? "converged" : "exhausted"; }

std::string_view to_string(PreconditionerKind p) noexcept { return p == PreconditionerKind::ilu0 ? "ilu0" : "none"; }

std::string_view to_string(Backend b) noexcept {
  switch (b) {
    case Backend::automatic: return "automatic";
    case Backend::uniform: return "uniform";
    case Backend::emulated: return "emulated";
  }
  return "?";
}

PreconditionerKind parse_preconditioner(std::string_view text) {
  if (text == "ilu0" || text == "ilu") return PreconditionerKind::ilu0;
  if (text == "none" || text == "identity") return PreconditionerKind::none;
  throw ConfigError("unknown preconditioner '" + std::string(text) + "' (ilu0, none)");
}

}  // namespace mpgmres
