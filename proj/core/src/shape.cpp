#include "bcb/shape.hpp"

#include <algorithm>
#include <cmath>

#include "bcb/geometry.hpp"

namespace bcb {

namespace {

double length_scale(const EffectiveShape& s) {
  return std::max({s.rho, s.rho_1b, s.rho_2b, 1.0});
}

/// In-plane heading solve: find x = p u + q w + gamma n with x.u = alpha,
/// x.w = beta and |x| = 1, where u, w are unit vectors spanning the triangle
/// plane and n is the plane normal. Returns (p, q, gamma^2).
struct PlaneSolve {
  double p;
  double q;
  double gamma_sq;
};

PlaneSolve solve_heading(const Vec3& u, const Vec3& w, double alpha, double beta) {
  const double c = dot(u, w);
  const double denom = 1.0 - c * c;
  const double p = (alpha - c * beta) / denom;
  const double q = (beta - c * alpha) / denom;
  return PlaneSolve{p, q, 1.0 - (p * p + q * q + 2.0 * p * q * c)};
}

// Slack below which a computed gamma^2 is treated as a genuine failure of the
// two constraint circles to intersect (rather than roundoff).
constexpr double kGammaSlack = 1e-11;

}  // namespace

EffectiveShape effective_shape(const WorldState& state, double min_sep) {
  state.require_separated(min_sep);
  const Vec3 r12 = state.r_12();
  const double rho = r12.norm();
  const Vec3 r1b = state.r_1b();
  const Vec3 r2b = state.r_2b();
  const double rho_1b = r1b.norm();
  const double rho_2b = r2b.norm();

  const Vec3& x1 = state.agent1.frame.x_axis;
  const Vec3& x2 = state.agent2.frame.x_axis;

  return EffectiveShape{
      rho,
      rho_1b,
      rho_2b,
      dot(x1, r12) / rho,
      dot(x2, -r12) / rho,  // xbar_2 is taken against r_21
      dot(x1, r1b) / rho_1b,
      dot(x2, r2b) / rho_2b,
      dot(x1, x2),
  };
}

double ConstraintReport::min_slack() const {
  return std::min({projection_1_slack, projection_2_slack, triangle_upper_slack,
                   triangle_lower_slack});
}

ConstraintReport constraint_residuals(const EffectiveShape& s) {
  ConstraintReport r;
  r.projection_1_slack = s.rho_2b - std::abs(s.rho_1b * s.xbar_1b - s.rho * s.xbar_1);
  r.projection_2_slack = s.rho_1b - std::abs(s.rho_2b * s.xbar_2b - s.rho * s.xbar_2);
  r.triangle_upper_slack = s.rho_1b + s.rho_2b - s.rho;
  r.triangle_lower_slack = s.rho - std::abs(s.rho_1b - s.rho_2b);
  r.collinear_sum = std::abs(s.rho_1b + s.rho_2b - s.rho);
  r.collinear_diff = std::abs(std::abs(s.rho_1b - s.rho_2b) - s.rho);
  return r;
}

XtildeCandidates xtilde_candidates(const EffectiveShape& shape, double tol_abs) {
  const double scale = length_scale(shape);
  const ConstraintReport report = constraint_residuals(shape);
  if (!report.realizable(tol_abs * scale)) {
    throw UnrealizableShape("shape violates realizability constraints (min slack " +
                            std::to_string(report.min_slack()) + ")");
  }
  if (report.collinear(tol_abs * scale)) {
    throw CollinearConfiguration(
        "triangle is degenerate; xtilde is not two-valued for collinear shapes");
  }

  const Triangle tri = triangle_from_sides(shape.rho_1b, shape.rho_2b, shape.rho);
  const Vec3 u1 = normalized(tri.r1 - tri.r2);
  const Vec3 w1 = normalized(tri.r1);
  const Vec3 u2 = -u1;
  const Vec3 w2 = normalized(tri.r2);

  const PlaneSolve h1 = solve_heading(u1, w1, shape.xbar_1, shape.xbar_1b);
  const PlaneSolve h2 = solve_heading(u2, w2, shape.xbar_2, shape.xbar_2b);
  if (h1.gamma_sq < -kGammaSlack || h2.gamma_sq < -kGammaSlack) {
    throw NoIntersection(
        "heading-constraint circles do not intersect on the unit sphere");
  }
  const double g1 = std::sqrt(std::max(0.0, h1.gamma_sq));
  const double g2 = std::sqrt(std::max(0.0, h2.gamma_sq));

  const Vec3 in1 = h1.p * u1 + h1.q * w1;
  const Vec3 in2 = h2.p * u2 + h2.q * w2;
  const double planar = dot(in1, in2);
  return XtildeCandidates{planar + g1 * g2, planar - g1 * g2};
}

std::array<double, EffectiveShape::kDim> shape_rhs(const EffectiveShape& s,
                                                   const ControlParams& params,
                                                   double min_sep) {
  params.require_symmetric();
  if (s.rho < min_sep || s.rho_1b < min_sep || s.rho_2b < min_sep) {
    throw SingularConfiguration("shape has a near-zero separation");
  }

  const double mu = params.mu();
  const double lam = params.lambda();
  const double a = params.a();
  const double a0 = params.a0();

  const double rho = s.rho, r1b = s.rho_1b, r2b = s.rho_2b;
  const double x1 = s.xbar_1, x2 = s.xbar_2, x1b = s.xbar_1b, x2b = s.xbar_2b;
  const double xt = s.xtilde;

  // Cosines of the triangle angles at agents 1 and 2 (law of cosines).
  const double c1 = (r1b * r1b + rho * rho - r2b * r2b) / (2.0 * rho * r1b);
  const double c2 = (r2b * r2b + rho * rho - r1b * r1b) / (2.0 * rho * r2b);

  const double one_m_lam = 1.0 - lam;

  const double d_rho = x1 + x2;
  const double d_r1b = x1b;
  const double d_r2b = x2b;

  const double d_x1 = (lam / rho) * (1.0 - xt - x1 * x1 - x1 * x2) -
                      one_m_lam * mu * (x1 - a) * (1.0 - x1 * x1) -
                      lam * mu * (x1b - a0) * (c1 - x1b * x1);

  const double d_x2 = (lam / rho) * (1.0 - xt - x2 * x2 - x1 * x2) -
                      one_m_lam * mu * (x2 - a) * (1.0 - x2 * x2) -
                      lam * mu * (x2b - a0) * (c2 - x2b * x2);

  const double d_x1b =
      -one_m_lam * (mu * (x1 - a) + (1.0 - xt) / rho) * (c1 - x1b * x1) -
      one_m_lam * (x1 / rho) * ((r2b / r1b) * x2b - (rho / r1b) * x2 - x1b * xt) -
      (lam * mu * (x1b - a0) - 1.0 / r1b) * (1.0 - x1b * x1b);

  const double d_x2b =
      -one_m_lam * (mu * (x2 - a) + (1.0 - xt) / rho) * (c2 - x2b * x2) -
      one_m_lam * (x2 / rho) * ((r1b / r2b) * x1b - (rho / r2b) * x1 - x2b * xt) -
      (lam * mu * (x2b - a0) - 1.0 / r2b) * (1.0 - x2b * x2b);

  const double d_xt =
      -lam * mu * (x2b - a0) * (-(rho / r2b) * x1 + (r1b / r2b) * x1b - x2b * xt) -
      lam * mu * (x1b - a0) * ((r2b / r1b) * x2b - (rho / r1b) * x2 - x1b * xt) -
      one_m_lam * ((mu * (x1 - a) + (1.0 - xt) / rho) * (-x2 - xt * x1) +
                   x1 * (1.0 - xt * xt) / rho) -
      one_m_lam * (x2 * (1.0 - xt * xt) / rho +
                   (mu * (x2 - a) + (1.0 - xt) / rho) * (-x1 - xt * x2));

  return {d_rho, d_r1b, d_r2b, d_x1, d_x2, d_x1b, d_x2b, d_xt};
}

WorldState embed_shape(const EffectiveShape& shape, EmbedBranch branch,
                       double xtilde_tol) {
  const double scale = length_scale(shape);
  const ConstraintReport report = constraint_residuals(shape);
  if (!report.realizable(tol::kPrecheckSlack * scale)) {
    throw UnrealizableShape("shape violates realizability constraints (min slack " +
                            std::to_string(report.min_slack()) + ")");
  }

  Triangle tri = triangle_from_sides(shape.rho_1b, shape.rho_2b, shape.rho);

  Vec3 x1, x2;
  const bool collinear = report.collinear(tol::kEquality * scale);
  if (collinear) {
    // Degenerate triangle: flatten the residual transverse component so the
    // baselines are exactly axis-aligned, then both baselines of each agent
    // are (anti)parallel. The in-plane component of a heading is a single
    // scalar along the x axis and the transverse component is free; agent 1's
    // transverse direction is fixed to +y, agent 2's follows from xtilde.
    tri.r2.y = 0.0;
    const Vec3 u1 = normalized(tri.r1 - tri.r2);
    const Vec3 w1 = normalized(tri.r1);
    const Vec3 u2 = -u1;
    const Vec3 w2 = normalized(tri.r2);

    const double x1x = shape.xbar_1 * u1.x;
    const double x2x = shape.xbar_2 * u2.x;
    if (std::abs(x1x * w1.x - shape.xbar_1b) > xtilde_tol ||
        std::abs(x2x * w2.x - shape.xbar_2b) > xtilde_tol) {
      throw UnrealizableShape(
          "collinear shape has inconsistent neighbor/beacon projections");
    }
    const double m1 = std::sqrt(std::max(0.0, 1.0 - x1x * x1x));
    const double m2 = std::sqrt(std::max(0.0, 1.0 - x2x * x2x));
    x1 = Vec3{x1x, m1, 0.0};
    const double want = shape.xtilde - x1x * x2x;
    if (m1 <= 1e-9 || m2 <= 1e-9) {
      if (std::abs(want) > xtilde_tol + m1 * m2) {
        throw UnrealizableShape("collinear shape admits no heading with the "
                                "requested xtilde");
      }
      x2 = Vec3{x2x, m2, 0.0};
    } else {
      double y2 = want / m1;
      if (std::abs(y2) > m2 + xtilde_tol) {
        throw UnrealizableShape("requested xtilde is outside the admissible "
                                "interval of the collinear configuration");
      }
      y2 = std::clamp(y2, -m2, m2);
      x2 = Vec3{x2x, y2, std::sqrt(std::max(0.0, m2 * m2 - y2 * y2))};
    }
  } else {
    const Vec3 u1 = normalized(tri.r1 - tri.r2);
    const Vec3 w1 = normalized(tri.r1);
    const Vec3 u2 = -u1;
    const Vec3 w2 = normalized(tri.r2);

    const PlaneSolve h1 = solve_heading(u1, w1, shape.xbar_1, shape.xbar_1b);
    const PlaneSolve h2 = solve_heading(u2, w2, shape.xbar_2, shape.xbar_2b);
    if (h1.gamma_sq < -kGammaSlack || h2.gamma_sq < -kGammaSlack) {
      throw UnrealizableShape(
          "heading-constraint circles do not intersect on the unit sphere");
    }
    const double g1 = std::sqrt(std::max(0.0, h1.gamma_sq));
    const double g2 = std::sqrt(std::max(0.0, h2.gamma_sq));

    const Vec3 in1 = h1.p * u1 + h1.q * w1;
    const Vec3 in2 = h2.p * u2 + h2.q * w2;
    const double planar = dot(in1, in2);

    const double same = planar + g1 * g2;
    const double opposite = planar - g1 * g2;
    const bool use_same =
        std::abs(shape.xtilde - same) <= std::abs(shape.xtilde - opposite);
    const double best = use_same ? same : opposite;
    if (std::abs(shape.xtilde - best) > xtilde_tol) {
      throw UnrealizableShape(
          "xtilde does not match either admissible candidate (nearest " +
          std::to_string(best) + ")");
    }

    double s1 = 1.0, s2 = use_same ? 1.0 : -1.0;
    if (branch == EmbedBranch::PDoublePrime) {
      // Mirror configuration: both headings reflect across the triangle
      // plane, preserving xtilde.
      s1 = -s1;
      s2 = -s2;
    }
    const Vec3 normal{0.0, 0.0, 1.0};
    x1 = in1 + (s1 * g1) * normal;
    x2 = in2 + (s2 * g2) * normal;
  }

  WorldState state;
  state.beacon = Vec3{0.0, 0.0, 0.0};
  state.agent1 = AgentState{tri.r1, frame_from_heading(x1)};
  state.agent2 = AgentState{tri.r2, frame_from_heading(x2)};
  return state;
}

ShapeTrajectory integrate_shape(const EffectiveShape& initial,
                                const ControlParams& params, double t_max, double dt,
                                double escape_slack) {
  if (!(dt > 0.0)) {
    throw ValidationError("dt must be positive");
  }
  if (t_max < 0.0) {
    throw ValidationError("t_max must be nonnegative");
  }
  params.require_symmetric();

  using Arr = std::array<double, EffectiveShape::kDim>;
  const auto add_scaled = [](const Arr& y, const Arr& k, double h) {
    Arr out;
    for (std::size_t j = 0; j < y.size(); ++j) out[j] = y[j] + h * k[j];
    return out;
  };

  ShapeTrajectory traj;
  const long long n_steps = std::llround(t_max / dt);
  traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);

  Arr y = initial.as_array();
  ConstraintReport report = constraint_residuals(initial);
  traj.min_slack = report.min_slack();
  traj.samples.push_back(ShapeSample{0.0, initial, report});

  const auto rhs = [&](const Arr& state) {
    return shape_rhs(EffectiveShape::from_array(state), params);
  };

  for (long long step_idx = 0; step_idx < n_steps; ++step_idx) {
    try {
      const Arr k1 = rhs(y);
      const Arr k2 = rhs(add_scaled(y, k1, 0.5 * dt));
      const Arr k3 = rhs(add_scaled(y, k2, 0.5 * dt));
      const Arr k4 = rhs(add_scaled(y, k3, dt));
      for (std::size_t j = 0; j < y.size(); ++j) {
        y[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      }
    } catch (const SingularConfiguration& e) {
      traj.termination = ShapeTermination::Singular;
      traj.termination_detail = e.what();
      return traj;
    }

    const double t = static_cast<double>(step_idx + 1) * dt;
    const EffectiveShape s = EffectiveShape::from_array(y);
    report = constraint_residuals(s);
    traj.min_slack = std::min(traj.min_slack, report.min_slack());
    traj.samples.push_back(ShapeSample{t, s, report});

    if (report.min_slack() < escape_slack) {
      traj.termination = ShapeTermination::ManifoldEscape;
      traj.termination_detail =
          "constraint slack " + std::to_string(report.min_slack()) +
          " fell below " + std::to_string(escape_slack) + " at t = " + std::to_string(t);
      return traj;
    }
  }
  return traj;
}

}  // namespace bcb
