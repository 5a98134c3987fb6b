#pragma once

#include <string>
#include <vector>

namespace odecirc {

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity;
  std::string code;     // e.g. ForbiddenNode, InconsistentArity, UnknownOracle
  std::string message;
  std::string path;     // slash-separated position of the offending subterm
};

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return true;
  return false;
}

std::string format_diagnostic(const Diagnostic& d);

}  // namespace odecirc
