#include "odecirc/mode.hpp"

#include <algorithm>
#include <stdexcept>

namespace odecirc {

namespace {

using TK = TermKind;

std::vector<ModePreset> build_presets() {
  std::vector<ModePreset> v;
  v.push_back({Mode::ACDL, "acdl", false, false,
               {TK::Ode1, TK::Ode2, TK::Ode3}, {}, false});
  v.push_back({Mode::ACDL_SMASH, "acdl-smash", false, false,
               {TK::Ode1, TK::Ode3}, {"#"}, false});
  v.push_back({Mode::ACDL_WK, "acdl-wk", false, true,
               {TK::Ode1, TK::Ode2, TK::Ode3}, {}, false});
  v.push_back({Mode::ACDL_ODE4, "acdl-ode4", false, false,
               {TK::Ode1, TK::Ode4}, {}, false});
  v.push_back({Mode::TCDL, "tcdl", true, false,
               {TK::Ode1, TK::Ode2, TK::Ode3}, {}, false});
  v.push_back({Mode::TCDL_STAR, "tcdl-star", false, false,
               {TK::Ode1, TK::Ode2, TK::Ode2Star, TK::Ode3}, {}, false});
  v.push_back({Mode::TCDL_SMASH, "tcdl-smash", false, false,
               {TK::Ode1, TK::Ode1Star, TK::Ode3}, {"#"}, false});
  return v;
}

const std::vector<ModePreset>& presets_storage() {
  static const std::vector<ModePreset> v = build_presets();
  return v;
}

}  // namespace

const std::vector<ModePreset>& all_presets() { return presets_storage(); }

const ModePreset& preset(Mode m) {
  for (const auto& p : presets_storage())
    if (p.id == m) return p;
  throw std::logic_error("unknown mode");
}

std::optional<Mode> mode_by_name(const std::string& name) {
  for (const auto& p : presets_storage())
    if (p.name == name) return p.id;
  return std::nullopt;
}

bool is_tc_mode(Mode m) {
  return m == Mode::TCDL || m == Mode::TCDL_STAR || m == Mode::TCDL_SMASH;
}

}  // namespace odecirc
