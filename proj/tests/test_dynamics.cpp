#include <cmath>
#include <utility>

#include "bcb/config.hpp"
#include "bcb/dynamics.hpp"
#include "bcb/equilibria.hpp"
#include "bcb/rng.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace bcb;
using test::orthogonal_configuration;

namespace {

const auto zero_controller = [](const WorldState&) {
  return std::pair<SteeringInput, SteeringInput>{{0.0, 0.0}, {0.0, 0.0}};
};

WorldState transformed(const WorldState& s, const Vec3& axis, double angle,
                       const Vec3& shift) {
  const auto move = [&](const AgentState& a) {
    return AgentState{rotate(a.r, axis, angle) + shift,
                      Frame{rotate(a.frame.x_axis, axis, angle),
                            rotate(a.frame.y_axis, axis, angle),
                            rotate(a.frame.z_axis, axis, angle)}};
  };
  return WorldState{move(s.agent1), move(s.agent2), rotate(s.beacon, axis, angle) + shift};
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("state_derivative: zero curvature means straight frames") {
  Rng rng(1);
  SampleOptions opts;
  const WorldState s = sample_world_state(rng, opts);
  const WorldDeriv d = state_derivative(s, {0, 0}, {0, 0});
  CHECK((d.dr1 - s.agent1.frame.x_axis).norm() == 0.0);
  CHECK(d.dx1.norm() == 0.0);
  CHECK(d.dy1.norm() == 0.0);
  CHECK(d.dz1.norm() == 0.0);
  CHECK((d.dr2 - s.agent2.frame.x_axis).norm() == 0.0);
}

TEST_CASE("state_derivative on the identity triad with u=1, v=0") {
  WorldState s = orthogonal_configuration();
  s.agent1.frame = Frame::identity();
  const WorldDeriv d = state_derivative(s, {1.0, 0.0}, {0.0, 0.0});
  CHECK((d.dx1 - Vec3{0, 1, 0}).norm() == 0.0);
  CHECK((d.dy1 - Vec3{-1, 0, 0}).norm() == 0.0);
  CHECK(d.dz1.norm() == 0.0);
}

TEST_CASE("the frame ODE preserves the Gram matrix to first order") {
  Rng rng(2);
  const ControlParams p = ControlParams::common(1.1, 0.4, -0.2, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const WorldState s = sample_world_state(rng, {});
    const auto [in1, in2] = ClosedLoopController{p}(s);
    const WorldDeriv d = state_derivative(s, in1, in2);

    // d/dt of each Gram entry, assembled symbolically from the returned
    // derivative. All must vanish for a skew-symmetric generator.
    const Frame& f = s.agent1.frame;
    CHECK(std::abs(2.0 * dot(d.dx1, f.x_axis)) < 1e-14);
    CHECK(std::abs(2.0 * dot(d.dy1, f.y_axis)) < 1e-14);
    CHECK(std::abs(2.0 * dot(d.dz1, f.z_axis)) < 1e-14);
    CHECK(std::abs(dot(d.dx1, f.y_axis) + dot(f.x_axis, d.dy1)) < 1e-14);
    CHECK(std::abs(dot(d.dx1, f.z_axis) + dot(f.x_axis, d.dz1)) < 1e-14);
    CHECK(std::abs(dot(d.dy1, f.z_axis) + dot(f.y_axis, d.dz1)) < 1e-14);
  }
}

TEST_CASE("Gram drift along a short exact integration is fourth order small") {
  Rng rng(3);
  const ControlParams p = ControlParams::common(1.1, 0.4, -0.2, 0.3);
  const WorldState s0 = sample_world_state(rng, {});
  const ClosedLoopController controller{p};
  // Integrate without the renormalization step() applies, to observe the raw
  // drift of the continuous dynamics under RK4.
  const double h = 1e-3;
  WorldState s = s0;
  for (int i = 0; i < 10; ++i) {
    const auto eval = [&](const WorldState& w) {
      const auto [in1, in2] = controller(w);
      return state_derivative(w, in1, in2);
    };
    const WorldDeriv k1 = eval(s);
    const WorldDeriv k2 = eval(detail::add_scaled(s, k1, 0.5 * h));
    const WorldDeriv k3 = eval(detail::add_scaled(s, k2, 0.5 * h));
    const WorldDeriv k4 = eval(detail::add_scaled(s, k3, h));
    s = detail::add_scaled(s, detail::combine_rk4(k1, k2, k3, k4), h);
  }
  CHECK(s.agent1.frame.orthonormality_violation() < 1e-14);
  CHECK(s.agent2.frame.orthonormality_violation() < 1e-14);
}

TEST_CASE("step: zero control advances positions exactly linearly") {
  const WorldState s = orthogonal_configuration();
  const WorldState next = step(s, zero_controller, 0.1);
  CHECK((next.agent1.r - (s.agent1.r + 0.1 * s.agent1.frame.x_axis)).norm() == 0.0);
  CHECK((next.agent2.r - (s.agent2.r + 0.1 * s.agent2.frame.x_axis)).norm() == 0.0);
}

TEST_CASE("step: constant unit curvature closes a unit circle after 2 pi") {
  const auto constant_controller = [](const WorldState&) {
    return std::pair<SteeringInput, SteeringInput>{{1.0, 0.0}, {1.0, 0.0}};
  };
  WorldState s = orthogonal_configuration();
  const Vec3 start1 = s.agent1.r;
  const double dt = 1e-3;
  const double t_max = 2.0 * 3.14159265358979323846;
  const auto n = static_cast<long long>(t_max / dt);
  for (long long i = 0; i < n; ++i) s = step(s, constant_controller, dt);
  // Finish the fractional remainder of the period.
  s = step(s, constant_controller, t_max - static_cast<double>(n) * dt);
  CHECK((s.agent1.r - start1).norm() < 1e-9);
}

TEST_CASE("step: shape at an exact circling equilibrium is invariant") {
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const auto eq = prop2a_equilibrium(p);
  REQUIRE(eq.has_value());
  const WorldState s0 = embed_shape(eq->shape);
  const WorldState s1 = step(s0, ClosedLoopController{p}, 1e-3);
  CHECK(test::max_abs_shape_diff(effective_shape(s0), effective_shape(s1)) < 1e-10);
}

TEST_CASE("integrate: t_max = 0 records only the initial sample") {
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const TrajectoryRecord r = integrate(orthogonal_configuration(), p, 0.0, 1e-3);
  CHECK(r.samples.size() == 1);
  CHECK(r.termination == Termination::Completed);
}

TEST_CASE("integrate: collocated agents terminate immediately with reason") {
  WorldState s = orthogonal_configuration();
  s.agent2.r = s.agent1.r;
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const TrajectoryRecord r = integrate(s, p, 1.0, 1e-3);
  CHECK(r.termination == Termination::Singular);
  CHECK(r.samples.empty());
}

TEST_CASE("integrate keeps unit speed and orthonormality below 1e-9") {
  Rng rng(4);
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const WorldState s = sample_world_state(rng, {});
  const TrajectoryRecord r = integrate(s, p, 5.0, 1e-3);
  CHECK(r.termination == Termination::Completed);
  CHECK(r.max_frame_violation < 1e-9);
  // Spot-check a recorded sample directly.
  const WorldState& mid = r.samples[r.samples.size() / 2].state;
  CHECK(std::abs(mid.agent1.frame.x_axis.norm() - 1.0) < 1e-9);
}

TEST_CASE("integrate is equivariant under rigid motions") {
  Rng rng(5);
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const WorldState s = sample_world_state(rng, {});
  const Vec3 axis = rng.unit_vector();
  const double angle = 1.234;
  const Vec3 shift{3.0, -2.0, 5.5};
  const WorldState moved = transformed(s, axis, angle, shift);

  const TrajectoryRecord a = integrate(s, p, 5.0, 1e-3);
  const TrajectoryRecord b = integrate(moved, p, 5.0, 1e-3);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); i += 100) {
    const Vec3 expected = rotate(a.samples[i].state.agent1.r, axis, angle) + shift;
    CHECK((expected - b.samples[i].state.agent1.r).norm() < 1e-8);
    CHECK(test::max_abs_shape_diff(a.samples[i].shape, b.samples[i].shape) < 1e-8);
  }
}

TEST_CASE("halving dt cuts the terminal error about sixteenfold") {
  // Smooth non-equilibrium run; steps chosen coarse enough that truncation
  // error sits well above the roundoff floor, and dividing t_max exactly.
  Rng rng(6);
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const WorldState s = sample_world_state(rng, {});
  const double t_max = 2.0;

  const auto terminal = [&](double dt) {
    const TrajectoryRecord r = integrate(s, p, t_max, dt, {.stride = 1 << 20});
    REQUIRE(r.termination == Termination::Completed);
    return r.back().state;
  };
  const WorldState ref = terminal(1e-5);
  const auto err = [&](double dt) {
    const WorldState w = terminal(dt);
    return (w.agent1.r - ref.agent1.r).norm() + (w.agent2.r - ref.agent2.r).norm() +
           (w.agent1.frame.x_axis - ref.agent1.frame.x_axis).norm();
  };
  const double e1 = err(0.05);
  const double e2 = err(0.025);
  const double e3 = err(0.0125);
  CHECK(e1 / e2 > 10.0);
  CHECK(e1 / e2 < 24.0);
  CHECK(e2 / e3 > 10.0);
  CHECK(e2 / e3 < 24.0);
}

TEST_CASE("prop1 scenario: separation converges to the predicted value") {
  const Preset& preset = find_preset("prop1");
  Rng rng(42);
  WorldState s0 = perturb_state(embed_shape(preset.equilibrium_shape()), 0.01, rng);
  const TrajectoryRecord r =
      integrate(s0, preset.params, 200.0, 1e-3, {.stride = 100});
  REQUIRE(r.termination == Termination::Completed);
  // rho = 2 lambda / ((1-lambda) mu (-a)) = 2 for these parameters.
  CHECK(std::abs(r.back().shape.rho - 2.0) < 0.02);
}

}  // TEST_SUITE
