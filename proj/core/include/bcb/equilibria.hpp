#ifndef BCB_EQUILIBRIA_HPP
#define BCB_EQUILIBRIA_HPP

#include <array>
#include <optional>
#include <string>

#include "bcb/params.hpp"
#include "bcb/shape.hpp"

namespace bcb {

enum class EquilibriumClass { Prop1, Prop2a, Prop2b };

const char* to_string(EquilibriumClass c);

/// An existence inequality together with its evaluated left-hand side.
/// Inequalities are strict and evaluated exactly on validated parameters;
/// boundary cases do not exist.
struct ExistenceCondition {
  std::string inequality;  // human-readable form, e.g. "(1-lambda)a + lambda*a0 < 0"
  double lhs;              // evaluated left-hand side
  bool holds;
};

/// A classified circling equilibrium with its shape values.
struct EquilibriumSpec {
  EquilibriumClass cls;
  EffectiveShape shape;
  /// Prop 1 leaves the beacon distance free (set by initial conditions); the
  /// stored value is the caller's choice.
  bool rho_1b_is_free_parameter{false};
  ExistenceCondition existence;
};

/// Circling equilibrium for a zero beacon offset (a0 = 0): exists iff a < 0,
/// with rho = 2 lambda / ((1-lambda) mu (-a)) and the beacon distance free.
///
/// Throws ParameterViolation if params.a0() != 0, AssumptionViolation if the
/// params are not symmetric, UnrealizableShape if rho_1b_choice < rho / 2.
/// Returns nullopt when no equilibrium exists.
std::optional<EquilibriumSpec> prop1_equilibrium(const ControlParams& params,
                                                 double rho_1b_choice);

/// Beacon-centered circling equilibrium for a0 != 0: exists iff
/// (1-lambda) a + lambda a0 < 0, with rho_1b = rho_2b =
/// lambda / (-mu ((1-lambda)a + lambda a0)), rho = 2 rho_1b, xtilde = -1.
std::optional<EquilibriumSpec> prop2a_equilibrium(const ControlParams& params);

/// Stacked-circles equilibrium for a0 != 0: exists iff a0 < 0, a > 0 and
/// (1-lambda) a + lambda a0 < 0, with xtilde = +1 and
/// rho_1b = lambda a0 / (mu ((1-lambda)^2 a^2 - lambda^2 a0^2)),
/// rho = -2 (1-lambda) a / (mu ((1-lambda)^2 a^2 - lambda^2 a0^2)).
std::optional<EquilibriumSpec> prop2b_equilibrium(const ControlParams& params);

// Existence conditions alone (used by parameter sweeps). Prop 1 additionally
// requires a0 = 0 and prop 2(a)/(b) require a0 != 0; those domain requirements
// are part of the returned condition.
ExistenceCondition prop1_condition(const ControlParams& params);
ExistenceCondition prop2a_condition(const ControlParams& params);
ExistenceCondition prop2b_condition(const ControlParams& params);

/// Derivatives of (xbar_1, xbar_2, xbar_1b, xbar_2b, xtilde) on the nullcline
/// rho_dot = rho_1b_dot = rho_2b_dot = 0, i.e. for shapes with
/// xbar_2 = -xbar_1 and xbar_1b = xbar_2b = 0 (checked within nullcline_tol;
/// NullclineViolation otherwise). Agrees with the corresponding components of
/// shape_rhs on the nullcline.
std::array<double, 5> nullcline_rhs(const EffectiveShape& shape,
                                    const ControlParams& params,
                                    double nullcline_tol = tol::kEquality);

/// Largest absolute component of shape_rhs: zero (within roundoff) exactly at
/// equilibria of the reduced dynamics.
double residual_at(const EffectiveShape& shape, const ControlParams& params);

}  // namespace bcb

#endif  // BCB_EQUILIBRIA_HPP
