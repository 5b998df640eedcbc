#include <cmath>
#include <vector>

#include "bcb/analysis.hpp"
#include "bcb/config.hpp"
#include "bcb/equilibria.hpp"
#include "bcb/rng.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace bcb;

namespace {

std::vector<Vec3> tilted_circle(const Vec3& center, const Vec3& normal, double radius,
                                int n, Rng* noise = nullptr, double amplitude = 0.0) {
  const Frame f = frame_from_heading(normal);
  const Vec3 e1 = f.y_axis, e2 = f.z_axis;
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * 3.14159265358979323846 * i / n;
    Vec3 p = center + radius * (std::cos(th) * e1 + std::sin(th) * e2);
    if (noise != nullptr) {
      p += Vec3{noise->uniform(-amplitude, amplitude),
                noise->uniform(-amplitude, amplitude),
                noise->uniform(-amplitude, amplitude)};
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("fit_circle_3d recovers an exact tilted circle") {
  const Vec3 center{1.0, -2.0, 3.0};
  const Vec3 normal = normalized(Vec3{1.0, 2.0, 2.0});
  const auto pts = tilted_circle(center, normal, 1.0, 100);
  const CircleFit fit = fit_circle_3d(pts);
  CHECK(std::abs(fit.radius - 1.0) < 1e-9);
  CHECK(fit.rms < 1e-9);
  CHECK((fit.center - center).norm() < 1e-9);
  CHECK(std::abs(std::abs(dot(fit.normal, normal)) - 1.0) < 1e-12);
}

TEST_CASE("fit_circle_3d under uniform noise") {
  Rng rng(31);
  const Vec3 center{0.5, 0.25, -1.0};
  const Vec3 normal = normalized(Vec3{0.3, -1.0, 0.5});
  const auto pts = tilted_circle(center, normal, 1.0, 100, &rng, 1e-4);
  const CircleFit fit = fit_circle_3d(pts);
  CHECK(std::abs(fit.radius - 1.0) < 1e-3);
  CHECK(fit.rms > 1e-5);
  CHECK(fit.rms < 5e-4);
}

TEST_CASE("fit_circle_3d rejects degenerate input") {
  CHECK_THROWS_AS(fit_circle_3d({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 0, 0}}),
                  DegenerateData);
  std::vector<Vec3> collinear;
  for (int i = 0; i < 30; ++i) {
    collinear.push_back(Vec3{0.1 * i, 0.2 * i, -0.05 * i});
  }
  CHECK_THROWS_AS(fit_circle_3d(collinear), DegenerateData);
}

TEST_CASE("fit_circle_3d is invariant under rigid motions") {
  Rng rng(37);
  const auto pts = tilted_circle(Vec3{2, 1, 0}, normalized(Vec3{1, 1, 1}), 1.7, 60,
                                 &rng, 1e-5);
  const CircleFit base = fit_circle_3d(pts);

  const Vec3 axis = rng.unit_vector();
  const double angle = 0.83;
  const Vec3 shift{-4.0, 2.5, 1.0};
  std::vector<Vec3> moved;
  moved.reserve(pts.size());
  for (const Vec3& p : pts) moved.push_back(rotate(p, axis, angle) + shift);
  const CircleFit fit = fit_circle_3d(moved);
  CHECK(std::abs(fit.radius - base.radius) < 1e-12);
  CHECK(std::abs(fit.rms - base.rms) < 1e-12);
}

TEST_CASE("detect_circling on the exact beacon-centered equilibrium") {
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const auto eq = prop2a_equilibrium(p);
  REQUIRE(eq.has_value());
  const TrajectoryRecord r = integrate(embed_shape(eq->shape), p, 25.0, 1e-3);
  REQUIRE(r.termination == Termination::Completed);
  const CirclingReport report = detect_circling(r, 20.0, 1e-3);
  CHECK(report.converged);
  REQUIRE(report.circle1.has_value());
  REQUIRE(report.circle2.has_value());
  CHECK(std::abs(report.circle1->radius - 5.0) < 1e-6);
  CHECK(std::abs(report.circle2->radius - 5.0) < 1e-6);
  CHECK(report.common_axis_deviation < 1e-6);
  CHECK(report.plane_separation < 1e-6);
  CHECK(report.normal_angle < 1e-6);
}

TEST_CASE("detect_circling reports the stacked geometry of the parallel family") {
  const ControlParams p = ControlParams::common(1.0, 0.5, 0.2, -0.5);
  const auto eq = prop2b_equilibrium(p);
  REQUIRE(eq.has_value());
  const TrajectoryRecord r = integrate(embed_shape(eq->shape), p, 25.0, 1e-3);
  REQUIRE(r.termination == Termination::Completed);
  const CirclingReport report = detect_circling(r, 20.0, 1e-3);
  CHECK(report.converged);
  REQUIRE(report.circle1.has_value());
  REQUIRE(report.circle2.has_value());
  // Common radius, planes a baseline apart, axis through the beacon.
  CHECK(std::abs(report.circle1->radius - report.circle2->radius) < 1e-6);
  CHECK(std::abs(report.plane_separation - eq->shape.rho) < 1e-5);
  CHECK(report.common_axis_deviation < 1e-6);
}

TEST_CASE("detect_circling does not converge on straight-line motion") {
  WorldState s = test::orthogonal_configuration();
  // Head both agents at the beacon direction so the beacon bearing stays far
  // from zero while separations drift.
  s.agent1.frame = frame_from_heading(Vec3{1, 0, 0});
  s.agent2.frame = frame_from_heading(Vec3{1, 0, 0});
  s.agent1.r = Vec3{40, 0, 0};
  s.agent2.r = Vec3{-40, 0, 0};

  TrajectoryRecord record;
  record.dt = 1e-2;
  const auto zero = [](const WorldState&) {
    return std::pair<SteeringInput, SteeringInput>{{0, 0}, {0, 0}};
  };
  WorldState w = s;
  for (int i = 0; i <= 2500; ++i) {
    TrajectorySample sample;
    sample.t = i * 1e-2;
    sample.state = w;
    sample.input1 = sample.input2 = SteeringInput{0, 0};
    sample.shape = effective_shape(w);
    record.samples.push_back(sample);
    w = step(w, zero, 1e-2);
  }
  const CirclingReport report = detect_circling(record, 20.0, 1e-3);
  CHECK_FALSE(report.converged);
}

TEST_CASE("detect_circling needs a long enough record") {
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const TrajectoryRecord r =
      integrate(test::orthogonal_configuration(), p, 1.0, 1e-3);
  CHECK_THROWS_AS(detect_circling(r, 20.0, 1e-3), InsufficientData);
}

TEST_CASE("compare_representations: zero horizon has zero deviation") {
  Rng rng(41);
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const TrajectoryRecord r = integrate(sample_world_state(rng, {}), p, 0.0, 1e-3);
  const ComparisonReport report = compare_representations(r, p);
  CHECK(report.max_abs_deviation == 0.0);
  for (double v : report.rms_per_variable) CHECK(v == 0.0);
}

TEST_CASE("compare_representations deviation shrinks at fourth order in dt") {
  Rng rng(43);
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const WorldState s = sample_world_state(rng, {});
  const auto deviation = [&](double dt) {
    const TrajectoryRecord r = integrate(s, p, 2.0, dt);
    REQUIRE(r.termination == Termination::Completed);
    return compare_representations(r, p).max_abs_deviation;
  };
  // Coarse steps keep the truncation error above the roundoff floor.
  const double d1 = deviation(0.05);
  const double d2 = deviation(0.025);
  const double d3 = deviation(0.0125);
  CHECK(d1 / d2 > 8.0);
  CHECK(d1 / d2 < 32.0);
  CHECK(d2 / d3 > 8.0);
  CHECK(d2 / d3 < 32.0);
}

TEST_CASE("compare_representations flags mismatched parameters") {
  Rng rng(47);
  const ControlParams run_params = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  const ControlParams other = ControlParams::common(1.0, 0.5, -0.2, 0.2);
  const TrajectoryRecord r = integrate(sample_world_state(rng, {}), run_params, 5.0, 1e-3);
  REQUIRE(r.termination == Termination::Completed);
  const ComparisonReport honest = compare_representations(r, run_params);
  const ComparisonReport mismatched = compare_representations(r, other);
  MESSAGE("mismatched-parameter deviation: ", mismatched.max_abs_deviation);
  CHECK(mismatched.max_abs_deviation > 100.0 * honest.max_abs_deviation);
}

}  // TEST_SUITE
