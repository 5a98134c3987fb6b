#pragma once

#include <optional>

#include "odecirc/diagnostics.hpp"
#include "odecirc/mode.hpp"
#include "odecirc/term.hpp"

namespace odecirc {

// A term that passed validation under a preset. Immutable; safe to share.
class CheckedTerm {
 public:
  CheckedTerm(TermPtr t, ModePreset p, std::vector<Diagnostic> warnings)
      : term_(std::move(t)), preset_(std::move(p)), warnings_(std::move(warnings)) {}

  const TermPtr& term() const { return term_; }
  const ModePreset& mode() const { return preset_; }
  unsigned arity() const { return term_->arity; }
  const std::vector<Diagnostic>& warnings() const { return warnings_; }

 private:
  TermPtr term_;
  ModePreset preset_;
  std::vector<Diagnostic> warnings_;
};

struct ValidationResult {
  std::optional<CheckedTerm> checked;
  std::vector<Diagnostic> diagnostics;  // errors and warnings
  bool ok() const { return checked.has_value(); }
};

// Checks arity consistency, node admissibility under the preset, and the
// static boolean-valuedness of h (and k for ODE1*) children. A boolean guard
// that cannot be judged syntactically yields a DynamicBooleanGuard warning
// and is deferred to the evaluator's runtime range checks.
ValidationResult validate(const TermPtr& t, const ModePreset& mode);
ValidationResult validate(const TermPtr& t, Mode mode);

}  // namespace odecirc
