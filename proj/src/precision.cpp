#include "mpgmres/precision.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "mpgmres/errors.hpp"

namespace mpgmres {

std::string_view to_string(Precision p) noexcept { return p == Precision::low ? "low" : "high"; }

Precision parse_precision(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "low" || t == "single" || t == "float" || t == "fp32") return Precision::low;
  if (t == "high" || t == "double" || t == "fp64") return Precision::high;
  throw ConfigError("unknown precision '" + std::string(text) + "'");
}

}  // namespace mpgmres
