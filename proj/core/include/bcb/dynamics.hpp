#ifndef BCB_DYNAMICS_HPP
#define BCB_DYNAMICS_HPP

#include <string>
#include <utility>
#include <vector>

#include "bcb/shape.hpp"
#include "bcb/state.hpp"
#include "bcb/steering.hpp"

namespace bcb {

/// Time derivative of a WorldState under given steering inputs. The beacon is
/// fixed, so it carries no derivative entry.
struct WorldDeriv {
  Vec3 dr1, dx1, dy1, dz1;
  Vec3 dr2, dx2, dy2, dz2;
};

/// Generative model of two unit-speed self-steering particles:
///   rdot_i = x_i,  xdot_i = u_i y_i + v_i z_i,  ydot_i = -u_i x_i,
///   zdot_i = -v_i x_i.
/// The z row is the skew-symmetric completion that preserves frame
/// orthonormality along the flow.
WorldDeriv state_derivative(const WorldState& state, const SteeringInput& input1,
                            const SteeringInput& input2);

namespace detail {

inline WorldState add_scaled(const WorldState& s, const WorldDeriv& d, double h) {
  WorldState out = s;
  out.agent1.r += h * d.dr1;
  out.agent1.frame.x_axis += h * d.dx1;
  out.agent1.frame.y_axis += h * d.dy1;
  out.agent1.frame.z_axis += h * d.dz1;
  out.agent2.r += h * d.dr2;
  out.agent2.frame.x_axis += h * d.dx2;
  out.agent2.frame.y_axis += h * d.dy2;
  out.agent2.frame.z_axis += h * d.dz2;
  return out;
}

inline WorldDeriv combine_rk4(const WorldDeriv& k1, const WorldDeriv& k2,
                              const WorldDeriv& k3, const WorldDeriv& k4) {
  const auto mix = [](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    return (a + 2.0 * b + 2.0 * c + d) / 6.0;
  };
  return WorldDeriv{
      mix(k1.dr1, k2.dr1, k3.dr1, k4.dr1), mix(k1.dx1, k2.dx1, k3.dx1, k4.dx1),
      mix(k1.dy1, k2.dy1, k3.dy1, k4.dy1), mix(k1.dz1, k2.dz1, k3.dz1, k4.dz1),
      mix(k1.dr2, k2.dr2, k3.dr2, k4.dr2), mix(k1.dx2, k2.dx2, k3.dx2, k4.dx2),
      mix(k1.dy2, k2.dy2, k3.dy2, k4.dy2), mix(k1.dz2, k2.dz2, k3.dz2, k4.dz2)};
}

}  // namespace detail

/// One classical RK4 step with the controller evaluated at every stage,
/// followed by frame renormalization for both agents. The controller is any
/// callable WorldState -> pair<SteeringInput, SteeringInput>; the closed-loop
/// law raises SingularConfiguration at a stage whose separations collapse.
template <typename Controller>
WorldState step(const WorldState& state, Controller&& controller, double dt) {
  const auto eval = [&](const WorldState& s) {
    const auto [in1, in2] = controller(s);
    return state_derivative(s, in1, in2);
  };
  const WorldDeriv k1 = eval(state);
  const WorldDeriv k2 = eval(detail::add_scaled(state, k1, 0.5 * dt));
  const WorldDeriv k3 = eval(detail::add_scaled(state, k2, 0.5 * dt));
  const WorldDeriv k4 = eval(detail::add_scaled(state, k3, dt));

  WorldState out = detail::add_scaled(state, detail::combine_rk4(k1, k2, k3, k4), dt);
  out.agent1.frame = renormalize(out.agent1.frame);
  out.agent2.frame = renormalize(out.agent2.frame);
  return out;
}

/// One recorded integration sample: full state, the steering inputs evaluated
/// there, and the derived effective shape.
struct TrajectorySample {
  double t;
  WorldState state;
  SteeringInput input1;
  SteeringInput input2;
  EffectiveShape shape;
};

enum class Termination { Completed, Singular };

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  Termination termination{Termination::Completed};
  std::string termination_detail;
  /// Worst orthonormality / unit-speed deviation over all recorded samples.
  double max_frame_violation{0.0};
  double dt{0.0};

  const TrajectorySample& back() const { return samples.back(); }
  double t_end() const { return samples.empty() ? 0.0 : samples.back().t; }
};

struct IntegrateOptions {
  /// Record every `stride`-th step (the initial and final states are always
  /// recorded). 1 keeps every step.
  long long stride{1};
  double min_sep{tol::kSeparation};
};

/// Integrates the closed loop from `initial` under the beacon-referenced CB
/// law with `params`. A SingularConfiguration encountered mid-run terminates
/// the trajectory early with the reason recorded rather than escaping.
TrajectoryRecord integrate(const WorldState& initial, const ControlParams& params,
                           double t_max, double dt,
                           const IntegrateOptions& options = {});

}  // namespace bcb

#endif  // BCB_DYNAMICS_HPP
