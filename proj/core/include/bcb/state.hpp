#ifndef BCB_STATE_HPP
#define BCB_STATE_HPP

#include <string>

#include "bcb/geometry.hpp"
#include "bcb/vec3.hpp"

namespace bcb {

/// Position plus natural Frenet frame of one unit-speed agent.
struct AgentState {
  Vec3 r;       // position (m)
  Frame frame;  // [x, y, z] natural Frenet triad; x is the velocity direction
};

/// Natural curvature pair steering one agent (1/m).
struct SteeringInput {
  double u{0.0};
  double v{0.0};
};

/// Full configuration: two agents plus a fixed beacon.
struct WorldState {
  AgentState agent1;
  AgentState agent2;
  Vec3 beacon;

  Vec3 r_12() const { return agent1.r - agent2.r; }
  Vec3 r_1b() const { return agent1.r - beacon; }
  Vec3 r_2b() const { return agent2.r - beacon; }

  double rho() const { return r_12().norm(); }
  double rho_1b() const { return r_1b().norm(); }
  double rho_2b() const { return r_2b().norm(); }

  const AgentState& agent(int i) const { return i == 1 ? agent1 : agent2; }
  AgentState& agent(int i) { return i == 1 ? agent1 : agent2; }

  /// Throws SingularConfiguration if any separation is below min_sep.
  void require_separated(double min_sep = tol::kSeparation) const {
    if (rho() < min_sep || rho_1b() < min_sep || rho_2b() < min_sep) {
      throw SingularConfiguration(
          "agents/beacon too close: rho=" + std::to_string(rho()) +
          " rho_1b=" + std::to_string(rho_1b()) + " rho_2b=" + std::to_string(rho_2b()));
    }
  }
};

}  // namespace bcb

#endif  // BCB_STATE_HPP
