#include <array>

#include "bcb/config.hpp"
#include "bcb/equilibria.hpp"
#include "bcb/errors.hpp"

namespace bcb {

EffectiveShape Preset::equilibrium_shape() const {
  // Both a0 != 0 families can coexist for one parameter set, so the preset
  // name selects the family.
  std::optional<EquilibriumSpec> spec;
  if (name == "prop1") {
    spec = prop1_equilibrium(params, rho_1b_choice);
  } else if (name == "prop2a") {
    spec = prop2a_equilibrium(params);
  } else if (name == "prop2b") {
    spec = prop2b_equilibrium(params);
  }
  if (!spec) {
    throw ParameterViolation("preset '" + name + "' admits no circling equilibrium");
  }
  return spec->shape;
}

namespace {

const std::array<Preset, 3>& presets() {
  static const std::array<Preset, 3> kPresets = {
      Preset{"prop1", ControlParams::common(2.0, 0.5, -0.5, 0.0), 3.0, 200.0, 0.01},
      Preset{"prop2a", ControlParams::common(1.0, 0.5, -0.4, 0.2), 0.0, 500.0, 0.01},
      // The stacked-circles equilibrium has a very small region of
      // attraction; its preset starts exactly on the equilibrium.
      Preset{"prop2b", ControlParams::common(1.0, 0.5, 0.2, -0.5), 0.0, 60.0, 0.0},
  };
  return kPresets;
}

}  // namespace

const Preset& find_preset(const std::string& name) {
  for (const Preset& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const Preset& p : presets()) {
    if (!known.empty()) known += ", ";
    known += p.name;
  }
  throw ValidationError("unknown preset '" + name + "' (registered: " + known + ")");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const Preset& p : presets()) names.push_back(p.name);
  return names;
}

}  // namespace bcb
