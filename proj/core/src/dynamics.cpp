#include "bcb/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace bcb {

WorldDeriv state_derivative(const WorldState& state, const SteeringInput& input1,
                            const SteeringInput& input2) {
  const auto agent_deriv = [](const AgentState& a, const SteeringInput& in, Vec3& dr,
                              Vec3& dx, Vec3& dy, Vec3& dz) {
    dr = a.frame.x_axis;
    dx = in.u * a.frame.y_axis + in.v * a.frame.z_axis;
    dy = -in.u * a.frame.x_axis;
    dz = -in.v * a.frame.x_axis;
  };
  WorldDeriv d;
  agent_deriv(state.agent1, input1, d.dr1, d.dx1, d.dy1, d.dz1);
  agent_deriv(state.agent2, input2, d.dr2, d.dx2, d.dy2, d.dz2);
  return d;
}

TrajectoryRecord integrate(const WorldState& initial, const ControlParams& params,
                           double t_max, double dt, const IntegrateOptions& options) {
  if (!(dt > 0.0)) {
    throw ValidationError("dt must be positive");
  }
  if (t_max < 0.0) {
    throw ValidationError("t_max must be nonnegative");
  }
  if (options.stride < 1) {
    throw ValidationError("stride must be >= 1");
  }

  TrajectoryRecord record;
  record.dt = dt;

  const ClosedLoopController controller{params};
  const auto record_sample = [&](double t, const WorldState& s) {
    TrajectorySample sample;
    sample.t = t;
    sample.state = s;
    const auto [in1, in2] = controller(s);
    sample.input1 = in1;
    sample.input2 = in2;
    sample.shape = effective_shape(s, options.min_sep);
    record.samples.push_back(sample);
  };
  const auto track_violation = [&](const WorldState& s) {
    record.max_frame_violation =
        std::max({record.max_frame_violation,
                  s.agent1.frame.orthonormality_violation(),
                  s.agent2.frame.orthonormality_violation()});
  };

  try {
    initial.require_separated(options.min_sep);
    record_sample(0.0, initial);
  } catch (const SingularConfiguration& e) {
    record.termination = Termination::Singular;
    record.termination_detail = std::string("at t = 0: ") + e.what();
    return record;
  }
  track_violation(initial);

  const long long n_steps = std::llround(t_max / dt);
  WorldState state = initial;
  for (long long i = 0; i < n_steps; ++i) {
    const double t = static_cast<double>(i + 1) * dt;
    try {
      state = step(state, controller, dt);
      track_violation(state);
      if (i + 1 == n_steps || (i + 1) % options.stride == 0) {
        record_sample(t, state);
      }
    } catch (const SingularConfiguration& e) {
      record.termination = Termination::Singular;
      record.termination_detail = "at t = " + std::to_string(t) + ": " + e.what();
      return record;
    }
  }
  return record;
}

}  // namespace bcb
