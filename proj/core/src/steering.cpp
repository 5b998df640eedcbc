#include "bcb/steering.hpp"

namespace bcb {

namespace {

AgentShapeVars agent_shape_vars(const AgentState& self, const Vec3& baseline_to_neighbor,
                                const Vec3& baseline_to_beacon) {
  const Vec3 nb = normalized(baseline_to_neighbor);
  const Vec3 bb = normalized(baseline_to_beacon);
  return AgentShapeVars{
      dot(self.frame.x_axis, nb), dot(self.frame.y_axis, nb), dot(self.frame.z_axis, nb),
      dot(self.frame.x_axis, bb), dot(self.frame.y_axis, bb), dot(self.frame.z_axis, bb),
  };
}

}  // namespace

FullShapeVars full_shape_vars(const WorldState& state, double min_sep) {
  state.require_separated(min_sep);
  const Vec3 r12 = state.r_12();
  FullShapeVars out;
  out.agent1 = agent_shape_vars(state.agent1, r12, state.r_1b());
  out.agent2 = agent_shape_vars(state.agent2, -r12, state.r_2b());
  out.rho = r12.norm();
  out.rho_1b = state.rho_1b();
  out.rho_2b = state.rho_2b();
  out.xtilde = dot(state.agent1.frame.x_axis, state.agent2.frame.x_axis);
  return out;
}

SteeringInput cb_component(int i, const WorldState& state, const ControlParams& params,
                           double min_sep) {
  const Vec3 baseline = (i == 1) ? state.r_12() : -state.r_12();
  const double rho = baseline.norm();
  if (rho < min_sep) {
    throw SingularConfiguration("agents collocated: rho = " + std::to_string(rho));
  }
  const Vec3 rhat = baseline / rho;

  const AgentState& self = state.agent(i);
  const AgentState& other = state.agent(i == 1 ? 2 : 1);
  const Vec3 baseline_rate = self.frame.x_axis - other.frame.x_axis;
  const Vec3 swirl = cross(baseline_rate, rhat);

  const double xbar = dot(self.frame.x_axis, rhat);
  const double ybar = dot(self.frame.y_axis, rhat);
  const double zbar = dot(self.frame.z_axis, rhat);

  const double gain = -params.mu(i) * (xbar - params.a(i));
  return SteeringInput{
      gain * ybar - dot(self.frame.z_axis, swirl) / rho,
      gain * zbar + dot(self.frame.y_axis, swirl) / rho,
  };
}

SteeringInput beacon_component(int i, const WorldState& state,
                               const ControlParams& params, double min_sep) {
  const Vec3 baseline = (i == 1) ? state.r_1b() : state.r_2b();
  const double rho_ib = baseline.norm();
  if (rho_ib < min_sep) {
    throw SingularConfiguration("agent " + std::to_string(i) +
                                " collocated with beacon: rho_ib = " +
                                std::to_string(rho_ib));
  }
  const Vec3 rhat = baseline / rho_ib;

  const AgentState& self = state.agent(i);
  const double xbar_b = dot(self.frame.x_axis, rhat);
  const double gain = -params.mu_b(i) * (xbar_b - params.a_b(i));
  return SteeringInput{
      gain * dot(self.frame.y_axis, rhat),
      gain * dot(self.frame.z_axis, rhat),
  };
}

SteeringInput control(int i, const WorldState& state, const ControlParams& params,
                      double min_sep) {
  const SteeringInput cb = cb_component(i, state, params, min_sep);
  const SteeringInput b = beacon_component(i, state, params, min_sep);
  const double lambda = params.lambda();
  return SteeringInput{
      (1.0 - lambda) * cb.u + lambda * b.u,
      (1.0 - lambda) * cb.v + lambda * b.v,
  };
}

}  // namespace bcb
