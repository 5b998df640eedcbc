#ifndef BCB_CONFIG_HPP
#define BCB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bcb/params.hpp"
#include "bcb/rng.hpp"
#include "bcb/shape.hpp"
#include "bcb/state.hpp"

namespace bcb {

enum class OutputKind { Trajectory, Shape, Report };

/// How the initial configuration is chosen.
enum class InitialKind {
  Preset,        // embedded equilibrium of a named preset, optionally perturbed
  Random,        // seeded random configuration in a box around the beacon
  Shape,         // embedding of an explicit effective shape
  StateLiteral,  // explicit positions/headings
};

/// A fully validated run description assembled from the line-based
/// `key = value` config schema (sections [params], [initial], [run] are
/// organizational; keys are globally unique) and/or command-line flags.
struct RunConfig {
  std::optional<ControlParams> params;  // engaged after successful parsing

  InitialKind initial_kind{InitialKind::Random};
  std::optional<std::string> preset;
  std::optional<EffectiveShape> initial_shape;
  std::optional<WorldState> initial_state;
  double perturb{0.0};

  double t_max{20.0};
  double dt{1e-3};
  long long stride{1};
  std::uint64_t seed{0};
  double box_halfwidth{5.0};
  double min_separation{1.0};
  double window{20.0};
  double tolerance{1e-3};
  std::set<OutputKind> outputs{OutputKind::Trajectory, OutputKind::Shape,
                               OutputKind::Report};

  const ControlParams& control_params() const;
};

/// Parses config text. Unknown keys and malformed lines raise ParseError with
/// the 1-based line number; invariant violations raise ValidationError citing
/// the invariant. Per-agent keys (mu_1, a_1b, ...) override common ones
/// (mu, mu_b, a, a0); explicit keys override preset defaults.
RunConfig parse_config(const std::string& text);

/// parse_config on the contents of a file.
RunConfig load_config(const std::string& path);

/// Builds the initial configuration a RunConfig describes. Uses `rng` for
/// random draws and perturbations.
WorldState resolve_initial(const RunConfig& config, Rng& rng);

/// Scenario presets: pinned parameter values with embedded-equilibrium
/// initial conditions.
struct Preset {
  std::string name;
  ControlParams params;
  double rho_1b_choice;  // beacon distance for the family with it free
  double default_t_max;
  double default_perturb;

  EffectiveShape equilibrium_shape() const;
};

const Preset& find_preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace bcb

#endif  // BCB_CONFIG_HPP
