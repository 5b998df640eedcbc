#ifndef BCB_STEERING_HPP
#define BCB_STEERING_HPP

#include <utility>

#include "bcb/params.hpp"
#include "bcb/state.hpp"

namespace bcb {

/// Scalar shape variables of one agent against its neighbor and the beacon:
/// dot products of the frame axes with the normalized baselines.
struct AgentShapeVars {
  double xbar, ybar, zbar;     // against the neighbor baseline r_{i,i+1}
  double xbar_b, ybar_b, zbar_b;  // against the beacon baseline r_{ib}
};

/// The full scalar parametrization of the shape space: per-agent dot
/// products, the three separations, and the heading alignment xtilde.
///
/// Index arithmetic is modulo 2: agent 2's neighbor is agent 1, so agent 1's
/// baseline is r_12 = r_1 - r_2 and agent 2's is r_21.
struct FullShapeVars {
  AgentShapeVars agent1;
  AgentShapeVars agent2;
  double rho_1b, rho_2b, rho;
  double xtilde;

  const AgentShapeVars& agent(int i) const { return i == 1 ? agent1 : agent2; }
};

/// Extracts all scalar shape variables from a configuration.
/// Throws SingularConfiguration if any separation is below min_sep.
FullShapeVars full_shape_vars(const WorldState& state,
                              double min_sep = tol::kSeparation);

/// CB pursuit component of the steering law for agent i:
///   u = -mu_i (xbar_i - a_i) ybar_i - (1/rho) [z_i . (rdot_{i,i+1} x rhat_{i,i+1})]
///   v = -mu_i (xbar_i - a_i) zbar_i + (1/rho) [y_i . (rdot_{i,i+1} x rhat_{i,i+1})]
/// with rdot_{i,i+1} = x_i - x_{i+1} taken exactly from the unit-speed
/// kinematics (stage-consistent inside RK4, no numerical differencing).
SteeringInput cb_component(int i, const WorldState& state, const ControlParams& params,
                           double min_sep = tol::kSeparation);

/// Beacon-referenced component for agent i:
///   u = -mu_i^b (xbar_ib - a_ib) ybar_ib
///   v = -mu_i^b (xbar_ib - a_ib) zbar_ib
SteeringInput beacon_component(int i, const WorldState& state,
                               const ControlParams& params,
                               double min_sep = tol::kSeparation);

/// Convex combination u_i = (1 - lambda) u_i^CB + lambda u_i^B (same for v).
SteeringInput control(int i, const WorldState& state, const ControlParams& params,
                      double min_sep = tol::kSeparation);

/// Closed-loop law for both agents; the callable form used by the integrator.
struct ClosedLoopController {
  ControlParams params;

  std::pair<SteeringInput, SteeringInput> operator()(const WorldState& state) const {
    return {control(1, state, params), control(2, state, params)};
  }
};

}  // namespace bcb

#endif  // BCB_STEERING_HPP
