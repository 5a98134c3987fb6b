#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "odecirc/term.hpp"

namespace odecirc {

enum class Mode {
  ACDL,        // basics without x, schemas {ODE2, ODE3} (ODE1 as the k=1 case)
  ACDL_SMASH,  // basics + # oracle, schemas {ODE1, ODE3}
  ACDL_WK,     // schemas {ODE1, wk-ODE2 (h = 0), ODE3}
  ACDL_ODE4,   // schemas {ODE1, ODE4}
  TCDL,        // ACDL basics + x, schemas {ODE2, ODE3}
  TCDL_STAR,   // schemas {ODE2*, ODE3} (subsumes ODE2 and ODE1)
  TCDL_SMASH,  // basics + # oracle, schemas {ODE1*, ODE3}
};

// What one characterization permits. The schema set already includes the
// special cases the paper notes (ODE1 is ODE2 with k=1, ODE2 is ODE2* without
// the k=0 freedom, ODE1 is ODE1* with k=1), so membership is a plain lookup.
struct ModePreset {
  Mode id;
  std::string name;
  bool allow_times = false;
  bool wk_ode2_only = false;  // Ode2 nodes must have h identically Const0
  std::set<TermKind> schemas;
  std::set<std::string> named_oracles;  // e.g. "#"
  bool allow_all_oracles = false;       // non-uniform circ_C use

  bool allows_schema(TermKind k) const { return schemas.count(k) != 0; }
  // Same preset with arbitrary oracle basics admitted.
  ModePreset with_oracles() const {
    ModePreset p = *this;
    p.allow_all_oracles = true;
    return p;
  }
};

const ModePreset& preset(Mode m);
const std::vector<ModePreset>& all_presets();
std::optional<Mode> mode_by_name(const std::string& name);
bool is_tc_mode(Mode m);

}  // namespace odecirc
